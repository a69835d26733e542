#pragma once

/**
 * @file quadfield.hpp
 * @brief Exact arithmetic in a real quadratic field Q(sqrt(D)).
 *
 * Elements are x + y*sqrt(D) with exact rational coordinates. Integral
 * elements are taken from Z[sqrt(D)]; for D = 1 (mod 4) this is a proper
 * suborder of the maximal order, and FieldContext says so in its warnings.
 */

#include "qartin/arith.hpp"
#include "qartin/rational.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qartin {

/// The field Q(sqrt(delta)) for a squarefree delta > 1.
class FieldContext
{
public:
	/// A non-squarefree delta is replaced by its squarefree kernel.
	explicit FieldContext(i64 delta) : requested_(delta)
	{
		if (delta <= 1)
			throw std::invalid_argument("FieldContext: delta must exceed 1 (real quadratic field), got " +
			                            std::to_string(delta));
		i64 kernel = 1;
		for (auto [p, e] : factorize(static_cast<u64>(delta)).factors)
			if (e % 2)
				kernel *= static_cast<i64>(p);
		if (kernel == 1)
			throw std::invalid_argument("FieldContext: delta " + std::to_string(delta) +
			                            " is a perfect square; Q(sqrt(delta)) = Q");
		delta_ = kernel;
		if (kernel != delta)
			warnings_.push_back("delta " + std::to_string(delta) + " reduced to squarefree kernel " +
			                    std::to_string(kernel));
		if (kernel % 4 == 1)
			warnings_.push_back("delta = 1 (mod 4): integers are taken in Z[sqrt(" + std::to_string(kernel) +
			                    ")], not the full maximal order");
	}

	i64 delta() const { return delta_; }
	i64 requested_delta() const { return requested_; }
	const std::vector<std::string> &warnings() const { return warnings_; }

	friend bool operator==(const FieldContext &a, const FieldContext &b) { return a.delta_ == b.delta_; }

private:
	i64 requested_;
	i64 delta_ = 0;
	std::vector<std::string> warnings_;
};

/// x + y*sqrt(delta) with rational x, y.
class QuadElem
{
public:
	QuadElem(const FieldContext &field, Rational x, Rational y = Rational(0))
	    : x_(x), y_(y), delta_(field.delta())
	{}

	/// Same field as this element, without re-validating delta.
	QuadElem make(Rational x, Rational y = Rational(0)) const { return {delta_, x, y}; }

	const Rational &x() const { return x_; }
	const Rational &y() const { return y_; }
	i64 delta() const { return delta_; }

	bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
	bool is_rational() const { return y_.is_zero(); }

	/// Image under the real embedding sqrt(delta) > 0.
	long double real_embedding() const
	{
		return static_cast<long double>(x_.num()) / x_.den() +
		       static_cast<long double>(y_.num()) / y_.den() * std::sqrt(static_cast<long double>(delta_));
	}

	friend bool operator==(const QuadElem &a, const QuadElem &b)
	{
		return a.delta_ == b.delta_ && a.x_ == b.x_ && a.y_ == b.y_;
	}

	friend QuadElem operator+(const QuadElem &a, const QuadElem &b)
	{
		check_same(a, b);
		return {a.delta_, a.x_ + b.x_, a.y_ + b.y_};
	}

	friend QuadElem operator-(const QuadElem &a, const QuadElem &b)
	{
		check_same(a, b);
		return {a.delta_, a.x_ - b.x_, a.y_ - b.y_};
	}

	friend QuadElem operator*(const QuadElem &a, const QuadElem &b)
	{
		check_same(a, b);
		return {a.delta_, a.x_ * b.x_ + Rational(a.delta_) * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_};
	}

	friend QuadElem operator/(const QuadElem &a, const QuadElem &b)
	{
		check_same(a, b);
		if (b.is_zero())
			throw std::domain_error("QuadElem: division by zero");
		Rational n = b.x_ * b.x_ - Rational(b.delta_) * b.y_ * b.y_;
		QuadElem num = a * QuadElem(b.delta_, b.x_, -b.y_);
		return {a.delta_, num.x_ / n, num.y_ / n};
	}

	std::string to_string() const
	{
		return "(" + x_.to_string() + ") + (" + y_.to_string() + ")*sqrt(" + std::to_string(delta_) + ")";
	}

private:
	QuadElem(i64 delta, Rational x, Rational y) : x_(x), y_(y), delta_(delta) {}

	static QuadElem of(i64 delta, Rational x, Rational y) { return {delta, x, y}; }
	friend struct QuadInt;

	static void check_same(const QuadElem &a, const QuadElem &b)
	{
		if (a.delta_ != b.delta_)
			throw std::invalid_argument("QuadElem: operands from different fields");
	}

	friend QuadElem conjugate(const QuadElem &a);

	Rational x_;
	Rational y_;
	i64 delta_;
};

/// Element of Z[sqrt(delta)].
struct QuadInt
{
	i64 x = 0;
	i64 y = 0;
	i64 delta = 0;

	QuadInt(const FieldContext &field, i64 x_, i64 y_) : x(x_), y(y_), delta(field.delta()) {}

	QuadElem elem() const { return QuadElem::of(delta, Rational(x), Rational(y)); }
	bool is_zero() const { return x == 0 && y == 0; }
	std::string to_string() const { return std::to_string(x) + "+" + std::to_string(y) + "*sqrt(" + std::to_string(delta) + ")"; }

	friend bool operator==(const QuadInt &, const QuadInt &) = default;
};

// =============================================================================
// Field operations
// =============================================================================

/// The nontrivial automorphism sqrt(delta) -> -sqrt(delta).
inline QuadElem conjugate(const QuadElem &a) { return {a.delta_, a.x_, -a.y_}; }

inline QuadInt conjugate(const QuadInt &a)
{
	QuadInt r = a;
	r.y = -a.y;
	return r;
}

/// N(a) = a * conj(a) = x^2 - delta*y^2.
inline Rational norm(const QuadElem &a) { return a.x() * a.x() - Rational(a.delta()) * a.y() * a.y(); }

inline i64 norm(const QuadInt &a)
{
	i128 n = static_cast<i128>(a.x) * a.x - static_cast<i128>(a.delta) * a.y * a.y;
	if (n > INT64_MAX || n < INT64_MIN)
		throw std::overflow_error("norm: exceeds 64 bits for " + a.to_string());
	return static_cast<i64>(n);
}

/// M(a) = conj(a) / a; always of norm one.
inline QuadElem m_ratio(const QuadElem &a)
{
	if (a.is_zero())
		throw std::domain_error("m_ratio: zero has no ratio");
	return conjugate(a) / a;
}

/// a^e for any integer e (negative exponents invert).
inline QuadElem pow(QuadElem base, i64 e)
{
	QuadElem r = base.make(Rational(1));
	if (e < 0)
	{
		base = r / base;
		e = -e;
	}
	while (e)
	{
		if (e & 1)
			r = r * base;
		e >>= 1;
		if (e)
			base = base * base;
	}
	return r;
}

/// True iff the odd prime p stays prime in Q(sqrt(delta)): (delta/p) = -1.
inline bool is_inert(u64 p, const FieldContext &field)
{
	if (p == 2)
		throw std::invalid_argument("is_inert: p = 2 is out of scope");
	if (!is_prime(p))
		throw std::invalid_argument("is_inert: " + std::to_string(p) + " is not prime");
	if (static_cast<u64>(field.delta()) % p == 0)
		throw std::invalid_argument("is_inert: " + std::to_string(p) + " ramifies (divides delta)");
	return jacobi(field.delta(), static_cast<i64>(p)) == -1;
}

/// Neither N(a) nor 5*N(a)*delta is a perfect square.
inline bool square_guard(const QuadInt &a)
{
	i64 n = norm(a);
	if (n == 0)
		throw std::invalid_argument("square_guard: zero norm");
	return !is_perfect_square(n) && !is_perfect_square(static_cast<i128>(5) * n * a.delta);
}

} // namespace qartin
