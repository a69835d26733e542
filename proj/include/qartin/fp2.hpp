#pragma once

/**
 * @file fp2.hpp
 * @brief F_{p^2} = F_p(s), s^2 = delta, for primes p inert in Q(sqrt(delta)).
 *
 * Using the field's own delta as the non-residue makes reduction of an
 * element x + y*sqrt(delta) coordinate-wise. Frobenius is s -> -s, which is
 * the reduction of the Galois conjugation; this is what makes
 *
 *     N(a) = a^(p+1)    and    M(a) = conj(a)/a = a^(p-1)   (mod p)
 *
 * hold, and why ord(M) | p+1, ord(N) | p-1.
 */

#include "qartin/arith.hpp"
#include "qartin/quadfield.hpp"

#include <string>

namespace qartin {

/// Everything needed to compute orders in F_{p^2}^*, fixed per prime.
class Fp2Context
{
public:
	Fp2Context(u64 p, const FieldContext &field, u64 seed = kDefaultSeed) : p_(p)
	{
		if (p >= (u64{1} << 32))
			throw std::invalid_argument("Fp2Context: p must be below 2^32 so that p^2 - 1 fits in 64 bits");
		if (!is_inert(p, field))
			throw std::invalid_argument("Fp2Context: " + std::to_string(p) + " is not inert in Q(sqrt(" +
			                            std::to_string(field.delta()) + "))");
		delta_ = mod_floor(field.delta(), p);
		fact_pm1_ = factorize(p - 1, seed);
		fact_pp1_ = factorize(p + 1, seed);
		fact_group_ = multiply(fact_pm1_, fact_pp1_);
	}

	u64 p() const { return p_; }
	u64 delta_mod_p() const { return delta_; }
	const Factorization &fact_pm1() const { return fact_pm1_; }
	const Factorization &fact_pp1() const { return fact_pp1_; }
	/// Factorization of p^2 - 1, merged from p - 1 and p + 1.
	const Factorization &fact_group() const { return fact_group_; }
	u64 group_order() const { return p_ * p_ - 1; }

private:
	u64 p_;
	u64 delta_ = 0;
	Factorization fact_pm1_;
	Factorization fact_pp1_;
	Factorization fact_group_;
};

/// c0 + c1*s in F_{p^2}. Carries (p, delta mod p) to detect mixing contexts.
struct Fp2Elem
{
	u64 c0 = 0;
	u64 c1 = 0;
	u64 p = 0;
	u64 d = 0;

	bool is_zero() const { return c0 == 0 && c1 == 0; }
	bool is_one() const { return c0 == 1 && c1 == 0; }
	bool same_field(const Fp2Elem &o) const { return p == o.p && d == o.d; }

	friend bool operator==(const Fp2Elem &, const Fp2Elem &) = default;
};

inline Fp2Elem fp2_make(const Fp2Context &ctx, u64 c0, u64 c1 = 0)
{
	return {c0 % ctx.p(), c1 % ctx.p(), ctx.p(), ctx.delta_mod_p()};
}

inline Fp2Elem fp2_one(const Fp2Context &ctx) { return fp2_make(ctx, 1, 0); }

inline Fp2Elem reduce(const QuadInt &a, const Fp2Context &ctx)
{
	return {mod_floor(a.x, ctx.p()), mod_floor(a.y, ctx.p()), ctx.p(), ctx.delta_mod_p()};
}

namespace detail {
inline Fp2Elem mul_unchecked(const Fp2Elem &a, const Fp2Elem &b)
{
	const u64 p = a.p;
	u64 t = mulmod(mulmod(a.c1, b.c1, p), a.d, p);
	return {addmod(mulmod(a.c0, b.c0, p), t, p), addmod(mulmod(a.c0, b.c1, p), mulmod(a.c1, b.c0, p), p), p, a.d};
}
} // namespace detail

inline Fp2Elem mul(const Fp2Elem &a, const Fp2Elem &b)
{
	if (!a.same_field(b))
		throw std::invalid_argument("Fp2: operands from different contexts");
	return detail::mul_unchecked(a, b);
}

inline Fp2Elem operator*(const Fp2Elem &a, const Fp2Elem &b) { return mul(a, b); }

inline Fp2Elem pow(Fp2Elem a, u64 e)
{
	Fp2Elem r{1 % a.p, 0, a.p, a.d};
	while (e)
	{
		if (e & 1)
			r = detail::mul_unchecked(r, a);
		e >>= 1;
		if (e)
			a = detail::mul_unchecked(a, a);
	}
	return r;
}

/// x -> x^p, i.e. c1 -> -c1.
inline Fp2Elem frobenius(const Fp2Elem &a) { return {a.c0, a.c1 == 0 ? 0 : a.p - a.c1, a.p, a.d}; }

/// a^(p+1) = c0^2 - d*c1^2, as an element of F_p.
inline u64 fp2_norm(const Fp2Elem &a)
{
	u64 t = mulmod(mulmod(a.c1, a.c1, a.p), a.d, a.p);
	u64 s = mulmod(a.c0, a.c0, a.p);
	return s >= t ? s - t : s + (a.p - t);
}

inline Fp2Elem inverse(const Fp2Elem &a)
{
	if (a.is_zero())
		throw std::domain_error("Fp2: zero is not invertible");
	u64 n = invmod(fp2_norm(a), a.p);
	Fp2Elem c = frobenius(a);
	return {mulmod(c.c0, n, a.p), mulmod(c.c1, n, a.p), a.p, a.d};
}

namespace detail {
template <class Pow>
u64 order_from_factors(u64 n, const Factorization &f, Pow &&is_identity_at)
{
	for (auto [q, e] : f.factors)
		for (unsigned i = 0; i < e && is_identity_at(n / q); ++i)
			n /= q;
	return n;
}
} // namespace detail

/// Least n >= 1 with a^n = 1, by stripping primes of p^2 - 1 off the group order.
inline u64 mult_order(const Fp2Elem &a, const Fp2Context &ctx)
{
	if (a.p != ctx.p() || a.d != ctx.delta_mod_p())
		throw std::invalid_argument("mult_order: element does not belong to this context");
	if (a.is_zero())
		throw std::domain_error("mult_order: zero has no multiplicative order");
	return detail::order_from_factors(ctx.group_order(), ctx.fact_group(),
	                                  [&](u64 n) { return pow(a, n).is_one(); });
}

/// Order of c in F_p^* (c embedded as (c, 0)); uses only the factors of p - 1.
inline u64 mult_order_fp(u64 c, const Fp2Context &ctx)
{
	const u64 p = ctx.p();
	c %= p;
	if (c == 0)
		throw std::domain_error("mult_order_fp: zero has no multiplicative order");
	return detail::order_from_factors(p - 1, ctx.fact_pm1(), [&](u64 n) { return powmod(c, n, p) == 1; });
}

/// Orders of a, N(a) and M(a) modulo one inert prime.
struct OrderRecord
{
	u64 p = 0;
	u64 ord_alpha = 0;
	u64 ord_N = 0;
	u64 ord_M = 0;
	bool attained = false; // ord_alpha >= (p^2 - 1)/24

	/// (p^2 - 1) / ord_alpha, the index of <a> in F_{p^2}^*.
	u64 index() const { return (p * p - 1) / ord_alpha; }
};

/// 24 * ord >= p^2 - 1, i.e. ord >= ceil((p^2 - 1) / 24), in exact integers.
inline bool attains_threshold(u64 ord, u64 p) { return static_cast<u128>(ord) * 24 >= static_cast<u128>(p) * p - 1; }

inline OrderRecord order_record(const QuadInt &a, const Fp2Context &ctx)
{
	const u64 p = ctx.p();
	if (static_cast<u64>(a.delta) % p == 0 || mod_floor(a.delta, p) != ctx.delta_mod_p())
		throw std::invalid_argument("order_record: element from a different field");
	u64 n = mod_floor(static_cast<i128>(norm(a)), p);
	if (n == 0)
		throw std::domain_error("order_record: p = " + std::to_string(p) + " divides N(" + a.to_string() + ")");

	Fp2Elem r = reduce(a, ctx);
	Fp2Elem m = mul(reduce(conjugate(a), ctx), inverse(r));

	OrderRecord rec;
	rec.p = p;
	rec.ord_alpha = mult_order(r, ctx);
	rec.ord_N = mult_order_fp(n, ctx);
	rec.ord_M = mult_order(m, ctx);
	rec.attained = attains_threshold(rec.ord_alpha, p);
	return rec;
}

} // namespace qartin
