#pragma once

#include "qartin/arith.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qartin {

namespace detail {
inline u128 gcd128(u128 a, u128 b)
{
	while (b != 0)
	{
		u128 t = a % b;
		a = b;
		b = t;
	}
	return a;
}

inline u128 abs128(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

inline i128 checked_mul(i128 a, i128 b)
{
	i128 r;
	if (__builtin_mul_overflow(a, b, &r))
		throw std::overflow_error("rational: 128-bit multiplication overflow");
	return r;
}

inline i128 checked_add(i128 a, i128 b)
{
	i128 r;
	if (__builtin_add_overflow(a, b, &r))
		throw std::overflow_error("rational: 128-bit addition overflow");
	return r;
}

inline std::string to_string(i128 v)
{
	if (v == 0)
		return "0";
	u128 m = abs128(v);
	std::string s;
	while (m != 0)
	{
		s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(m % 10)));
		m /= 10;
	}
	if (v < 0)
		s.insert(s.begin(), '-');
	return s;
}
} // namespace detail

/// Exact rational number on 128-bit numerator/denominator, lowest terms,
/// positive denominator. Overflow raises std::overflow_error.
class Rational
{
public:
	constexpr Rational() = default;
	constexpr Rational(i64 n) : num_(n) {} // NOLINT: implicit from integers is intended

	Rational(i128 num, i128 den)
	{
		if (den == 0)
			throw std::domain_error("rational: zero denominator");
		if (den < 0)
		{
			num = detail::checked_mul(num, -1);
			den = detail::checked_mul(den, -1);
		}
		u128 g = detail::gcd128(detail::abs128(num), static_cast<u128>(den));
		num_ = num / static_cast<i128>(g);
		den_ = den / static_cast<i128>(g);
	}

	static Rational from_i128(i128 n) { return Rational(n, 1); }

	i128 num() const { return num_; }
	i128 den() const { return den_; }

	bool is_zero() const { return num_ == 0; }
	bool is_integer() const { return den_ == 1; }
	int sign() const { return (num_ > 0) - (num_ < 0); }

	double to_double() const { return static_cast<double>(static_cast<long double>(num_) / den_); }

	std::string to_string() const
	{
		return den_ == 1 ? detail::to_string(num_) : detail::to_string(num_) + "/" + detail::to_string(den_);
	}

	Rational operator-() const { return Rational(detail::checked_mul(num_, -1), den_); }

	friend Rational operator+(const Rational &a, const Rational &b)
	{
		u128 g = detail::gcd128(static_cast<u128>(a.den_), static_cast<u128>(b.den_));
		i128 bd = b.den_ / static_cast<i128>(g);
		i128 n = detail::checked_add(detail::checked_mul(a.num_, bd),
		                             detail::checked_mul(b.num_, a.den_ / static_cast<i128>(g)));
		return Rational(n, detail::checked_mul(a.den_, bd));
	}

	friend Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

	friend Rational operator*(const Rational &a, const Rational &b)
	{
		// cross-cancel first to keep intermediates small
		i128 g1 = static_cast<i128>(detail::gcd128(detail::abs128(a.num_), static_cast<u128>(b.den_)));
		i128 g2 = static_cast<i128>(detail::gcd128(detail::abs128(b.num_), static_cast<u128>(a.den_)));
		if (g1 == 0)
			g1 = 1;
		if (g2 == 0)
			g2 = 1;
		return Rational(detail::checked_mul(a.num_ / g1, b.num_ / g2), detail::checked_mul(a.den_ / g2, b.den_ / g1));
	}

	Rational reciprocal() const
	{
		if (num_ == 0)
			throw std::domain_error("rational: reciprocal of zero");
		return Rational(den_, num_);
	}

	friend Rational operator/(const Rational &a, const Rational &b) { return a * b.reciprocal(); }

	Rational &operator+=(const Rational &o) { return *this = *this + o; }
	Rational &operator-=(const Rational &o) { return *this = *this - o; }
	Rational &operator*=(const Rational &o) { return *this = *this * o; }
	Rational &operator/=(const Rational &o) { return *this = *this / o; }

	friend bool operator==(const Rational &a, const Rational &b) = default;

	friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
	{
		i128 l = detail::checked_mul(a.num_, b.den_), r = detail::checked_mul(b.num_, a.den_);
		return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
	}

	friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

private:
	i128 num_ = 0;
	i128 den_ = 1;
};

} // namespace qartin
