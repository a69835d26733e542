#pragma once

/**
 * @file construction.hpp
 * @brief An arithmetic progression u (mod v) of primes that are inert in
 * Q(sqrt(delta)), for which a is a non-residue and (p^2 - 1)/24 is coprime
 * to v.
 *
 * Steps:
 *   1. a seed prime p0 with (-1/p0) = (5/p0) = (a/p0) = (delta/p0) = -1;
 *   2. residues mod 16 and mod 9 forcing 2^3 || p^2 - 1 and 3 || p^2 - 1;
 *   3. for every prime l > 3 dividing a*delta, u_l = p0 or 9*p0 (mod l),
 *      whichever keeps l out of u_l^2 - 1;
 *   4. CRT over 16, 9 and those l, so v = 144 * prod(l).
 *
 * Every residue is p0 times a square modulo its prime, and u = p0 (mod 8),
 * so each Legendre symbol of a and delta at p = u (mod v) equals its value
 * at p0. The seed must have 2^3 || p0^2 - 1 for the mod 8 part to be
 * compatible with step 2; find_p0 enforces this.
 */

#include "qartin/arith.hpp"
#include "qartin/parallel.hpp"

#include <array>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qartin {

struct SeedPrime
{
	u64 p0 = 0;
	i64 a = 0;
	i64 delta = 0;
	/// (-1/p0), (5/p0), (a/p0), (delta/p0)
	std::array<int, 4> certificate{};
	std::vector<std::string> warnings;
};

/**
 * Perfect squares among (-1)^b0 5^b1 a^b2 delta^b3 with b0+b1+b2+b3 odd.
 *
 * If one of them is a square its symbol is +1 at every prime, and the four
 * conditions cannot hold simultaneously.
 */
inline std::vector<std::string> hypothesis_warnings(i64 a, i64 delta)
{
	std::vector<std::string> out;
	for (unsigned mask = 0; mask < 16; ++mask)
	{
		if (std::popcount(mask) % 2 == 0)
			continue;
		i128 n = 1;
		if (mask & 1)
			n *= -1;
		if (mask & 2)
			n *= 5;
		if (mask & 4)
			n *= a;
		if (mask & 8)
			n *= delta;
		if (is_perfect_square(n))
			out.push_back("product (-1)^" + std::to_string(mask & 1) + " 5^" + std::to_string((mask >> 1) & 1) +
			              " a^" + std::to_string((mask >> 2) & 1) + " delta^" + std::to_string((mask >> 3) & 1) +
			              " is a perfect square");
	}
	return out;
}

/// Smallest prime p0 <= bound, p0 not dividing 30*a*delta, with all four
/// symbols -1 and 2^3 || p0^2 - 1 (equivalently p0 = 3 mod 8).
inline SeedPrime find_p0(i64 a, i64 delta, u64 bound)
{
	if (a == 0 || delta == 0)
		throw std::invalid_argument("find_p0: a and delta must be nonzero");
	SeedPrime seed;
	seed.a = a;
	seed.delta = delta;
	seed.warnings = hypothesis_warnings(a, delta);
	for (u64 p = 7; p <= bound; p += 2)
	{
		if (p % 8 != 3 || !is_prime(p))
			continue;
		if (mod_floor(a, p) == 0 || mod_floor(delta, p) == 0)
			continue;
		const i64 ps = static_cast<i64>(p);
		std::array<int, 4> cert{jacobi(-1, ps), jacobi(5, ps), jacobi(a, ps), jacobi(delta, ps)};
		if (cert == std::array<int, 4>{-1, -1, -1, -1})
		{
			seed.p0 = p;
			seed.certificate = cert;
			return seed;
		}
	}
	throw not_found("find_p0: no seed prime <= " + std::to_string(bound) + " for a = " + std::to_string(a) +
	                    ", delta = " + std::to_string(delta),
	                bound);
}

/// u_l = p0 if l does not divide p0^2 - 1, else 9*p0, reduced mod l.
inline u64 residue_for_odd_prime(u64 l, u64 p0)
{
	if (l <= 3 || !is_prime(l))
		throw std::invalid_argument("residue_for_odd_prime: l must be a prime > 3, got " + std::to_string(l));
	if (p0 % l == 0)
		throw std::invalid_argument("residue_for_odd_prime: l = " + std::to_string(l) + " divides p0");
	u64 sq = mulmod(p0 % l, p0 % l, l);
	u64 ul = sq == 1 ? mulmod(9, p0 % l, l) : p0 % l;
	if (mulmod(ul, ul, l) == 1)
		throw invariant_violation("residue_for_odd_prime: l = " + std::to_string(l) + " divides u_l^2 - 1 for p0 = " +
		                          std::to_string(p0));
	return ul;
}

inline u64 residue_for_odd_prime(u64 l, const SeedPrime &seed) { return residue_for_odd_prime(l, seed.p0); }

struct Residues16And9
{
	u64 u2; // mod 16, 2^3 || u2^2 - 1
	u64 u3; // mod 9,  3 || u3^2 - 1
};

/**
 * u2 = p0 (mod 16) when 2^3 || p0^2 - 1; otherwise the least residue with that
 * valuation and u2 = p0 (mod 4). u3 = p0 when 3 || p0^2 - 1, else p0 - 3; both
 * keep u3 = p0 (mod 3).
 */
inline Residues16And9 residue_for_16_and_9(u64 p0)
{
	if (p0 % 2 == 0 || p0 % 3 == 0)
		throw std::invalid_argument("residue_for_16_and_9: p0 must be coprime to 6");
	auto v2_is_3 = [](u64 r) { return (r * r - 1) % 8 == 0 && (r * r - 1) % 16 != 0; };
	Residues16And9 r{};
	if (v2_is_3(p0 % 16))
		r.u2 = p0 % 16;
	else
	{
		for (u64 c = 1; c < 16; c += 2)
			if (v2_is_3(c) && c % 4 == p0 % 4)
			{
				r.u2 = c;
				break;
			}
	}
	u64 m9 = p0 % 9;
	r.u3 = (m9 * m9 - 1) % 9 == 0 ? (m9 + 6) % 9 : m9;
	return r;
}

inline Residues16And9 residue_for_16_and_9(const SeedPrime &seed) { return residue_for_16_and_9(seed.p0); }

struct Congruence
{
	u64 u = 0;
	u64 v = 1;
	/// modulus -> residue: 16, 9 and each prime l > 3 dividing a*delta
	std::map<u64, u64> residues;
	SeedPrime seed;
};

/// Distinct primes > 3 dividing a*delta, ascending.
inline std::vector<u64> odd_support(i64 a, i64 delta)
{
	std::set<u64> s;
	for (i64 n : {a, delta})
	{
		u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
		for (auto [q, e] : factorize(m).factors)
			if (q > 3)
				s.insert(q);
	}
	return {s.begin(), s.end()};
}

/// Throws invariant_violation unless every Congruence invariant holds.
inline void check_congruence(const Congruence &c)
{
	auto fail = [&](const std::string &what) {
		throw invariant_violation("congruence u = " + std::to_string(c.u) + ", v = " + std::to_string(c.v) + ": " +
		                          what);
	};
	if (std::gcd(c.u, c.v) != 1)
		fail("gcd(u, v) != 1");
	if (c.v % 144 != 0)
		fail("144 does not divide v");
	u128 u2m1 = static_cast<u128>(c.u) * c.u - 1;
	if (u2m1 % 24 != 0)
		fail("24 does not divide u^2 - 1");
	u128 q = u2m1 / 24;
	if (q % 2 == 0 || q % 3 == 0)
		fail("(u^2 - 1)/24 shares a factor with 6");
	for (auto [mod, r] : c.residues)
	{
		if (c.u % mod != r)
			fail("u does not match residue " + std::to_string(r) + " mod " + std::to_string(mod));
		if (mod != 16 && mod != 9 && u2m1 % mod == 0)
			fail("l = " + std::to_string(mod) + " divides u^2 - 1");
	}
	// gcd((u^2-1)/24, v): v's primes are 2, 3 and the l's
	for (auto [p, e] : factorize(c.v).factors)
		if (q % p == 0)
			fail("gcd((u^2 - 1)/24, v) != 1 at " + std::to_string(p));
}

inline Congruence build_congruence(i64 a, i64 delta, const SeedPrime &seed)
{
	if (seed.a != a || seed.delta != delta)
		throw std::invalid_argument("build_congruence: seed was found for different (a, delta)");
	Congruence c;
	c.seed = seed;
	auto r = residue_for_16_and_9(seed);
	std::vector<Congruent> system{{static_cast<i64>(r.u2), 16}, {static_cast<i64>(r.u3), 9}};
	c.residues[16] = r.u2;
	c.residues[9] = r.u3;
	for (u64 l : odd_support(a, delta))
	{
		if (l == seed.p0)
			continue;
		u64 ul = residue_for_odd_prime(l, seed);
		c.residues[l] = ul;
		system.push_back({static_cast<i64>(ul), l});
	}
	auto sol = crt(system);
	c.u = sol.u;
	c.v = sol.v;
	check_congruence(c);
	return c;
}

struct VerificationFailure
{
	u64 p;
	std::string reason;
};

struct VerificationReport
{
	u64 bound = 0;
	u64 checked = 0;
	std::vector<VerificationFailure> failures;
	/// histograms of v2(p - 1) and v2(p + 1) over the checked primes
	std::map<unsigned, u64> v2_pm1;
	std::map<unsigned, u64> v2_pp1;

	bool ok() const { return failures.empty(); }
};

/// Checks every prime p = u (mod v), p <= bound, against the properties the
/// construction promises.
inline VerificationReport verify_congruence(const Congruence &c, u64 bound, unsigned workers = 1)
{
	VerificationReport rep;
	rep.bound = bound;
	if (bound < 2)
		return rep;
	PrimeTable table(bound);
	std::vector<u64> ps;
	for (u64 p : table.primes())
		if (p % c.v == c.u)
			ps.push_back(p);

	const i64 a = c.seed.a, delta = c.seed.delta;
	const auto v_factors = factorize(c.v);
	auto rows = parallel_map(ps.size(), workers, [&](std::size_t i) {
		u64 p = ps[i];
		std::vector<std::string> why;
		const i64 sp = static_cast<i64>(p);
		if (jacobi(delta, sp) != -1)
			why.push_back("(delta/p) != -1");
		if (jacobi(a, sp) != -1)
			why.push_back("(a/p) != -1");
		u64 n = p * p - 1;
		if (valuation(n, 2) != 3)
			why.push_back("v2(p^2 - 1) != 3");
		if (valuation(n, 3) != 1)
			why.push_back("v3(p^2 - 1) != 1");
		if (n % 24 == 0)
		{
			for (auto [q, e] : v_factors.factors)
				if ((n / 24) % q == 0)
				{
					why.push_back("gcd((p^2 - 1)/24, v) != 1");
					break;
				}
		}
		std::string reason;
		for (auto &w : why)
			reason += (reason.empty() ? "" : "; ") + w;
		return reason;
	});
	for (std::size_t i = 0; i < ps.size(); ++i)
	{
		++rep.checked;
		++rep.v2_pm1[valuation(ps[i] - 1, 2)];
		++rep.v2_pp1[valuation(ps[i] + 1, 2)];
		if (!rows[i].empty())
			rep.failures.push_back({ps[i], rows[i]});
	}
	return rep;
}

} // namespace qartin
