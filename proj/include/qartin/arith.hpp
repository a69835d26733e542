#pragma once

/**
 * @file arith.hpp
 * @brief Exact 64-bit integer number theory.
 *
 * Primality (deterministic Miller-Rabin), Jacobi symbols, factorization
 * (trial division followed by Pollard-Brent), CRT, the offset logarithmic
 * integral Li(y) = int_2^y dt/log t, and prime counts in residue classes.
 *
 * Everything here is a pure function of its arguments; the only shared
 * state is the lazily built table of primes below 10^6 used for trial
 * division, whose initialization is thread-safe.
 */

#include "qartin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qartin {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

/// Default seed for the randomized parts of factorization.
inline constexpr u64 kDefaultSeed = 0x5eed'a271'0000'0001ULL;

// =============================================================================
// Modular arithmetic
// =============================================================================

constexpr u64 mulmod(u64 a, u64 b, u64 m)
{
	return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 addmod(u64 a, u64 b, u64 m)
{
	// a, b < m
	return a >= m - b ? a - (m - b) : a + b;
}

constexpr u64 powmod(u64 base, u64 exp, u64 m)
{
	if (m == 1)
		return 0;
	u64 r = 1;
	base %= m;
	while (exp)
	{
		if (exp & 1)
			r = mulmod(r, base, m);
		base = mulmod(base, base, m);
		exp >>= 1;
	}
	return r;
}

/// Reduce a signed value into [0, m).
constexpr u64 mod_floor(i64 a, u64 m)
{
	if (a >= 0)
		return static_cast<u64>(a) % m;
	u64 r = static_cast<u64>(-(a + 1)) % m; // -(a+1) avoids overflow at INT64_MIN
	return m - 1 - r;
}

constexpr u64 mod_floor(i128 a, u64 m)
{
	i128 r = a % static_cast<i128>(m);
	if (r < 0)
		r += m;
	return static_cast<u64>(r);
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline u64 invmod(u64 a, u64 m)
{
	i128 old_r = a % m, r = m, old_s = 1, s = 0;
	while (r != 0)
	{
		i128 q = old_r / r;
		std::tie(old_r, r) = std::pair{r, old_r - q * r};
		std::tie(old_s, s) = std::pair{s, old_s - q * s};
	}
	if (old_r != 1 && m != 1)
		throw std::domain_error("invmod: argument not invertible");
	return mod_floor(old_s, m);
}

/// Exponent of the prime q in n (n > 0).
constexpr unsigned valuation(u64 n, u64 q)
{
	unsigned k = 0;
	while (n != 0 && n % q == 0)
	{
		n /= q;
		++k;
	}
	return k;
}

constexpr u64 isqrt(u64 n)
{
	u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
	while (r > 0 && static_cast<u128>(r) * r > n)
		--r;
	while (static_cast<u128>(r + 1) * (r + 1) <= n)
		++r;
	return r;
}

/// True iff n is the square of a rational integer. Negative values never are.
inline bool is_perfect_square(i128 n)
{
	if (n < 0)
		return false;
	u128 m = static_cast<u128>(n);
	u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(m)));
	while (r > 0 && r * r > m)
		--r;
	while ((r + 1) * (r + 1) <= m)
		++r;
	return r * r == m;
}

// =============================================================================
// Primality
// =============================================================================

/// Deterministic for every 64-bit n (Sinclair's seven-base witness set).
inline bool is_prime(u64 n)
{
	if (n < 2)
		return false;
	for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
	{
		if (n % p == 0)
			return n == p;
	}
	if (n < 37 * 37)
		return true;

	u64 d = n - 1;
	unsigned s = 0;
	while ((d & 1) == 0)
	{
		d >>= 1;
		++s;
	}
	for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
	{
		a %= n;
		if (a == 0)
			continue;
		u64 x = powmod(a, d, n);
		if (x == 1 || x == n - 1)
			continue;
		bool composite = true;
		for (unsigned i = 1; i < s; ++i)
		{
			x = mulmod(x, x, n);
			if (x == n - 1)
			{
				composite = false;
				break;
			}
		}
		if (composite)
			return false;
	}
	return true;
}

/**
 * Sieve of Eratosthenes up to a fixed limit.
 *
 * Immutable after construction, so one table can be shared by any number of
 * concurrent readers.
 */
class PrimeTable
{
public:
	explicit PrimeTable(u64 limit) : limit_(limit), composite_(limit + 1, false)
	{
		composite_[0] = true;
		if (limit >= 1)
			composite_[1] = true;
		for (u64 i = 2; i * i <= limit; ++i)
			if (!composite_[i])
				for (u64 j = i * i; j <= limit; j += i)
					composite_[j] = true;
		for (u64 i = 2; i <= limit; ++i)
			if (!composite_[i])
				primes_.push_back(i);
	}

	u64 limit() const { return limit_; }

	bool is_prime(u64 n) const
	{
		if (n > limit_)
			throw std::out_of_range("PrimeTable::is_prime beyond sieve limit");
		return !composite_[n];
	}

	const std::vector<u64> &primes() const { return primes_; }

	/// Primes in [lo, hi], hi <= limit.
	std::span<const u64> range(u64 lo, u64 hi) const
	{
		auto b = std::lower_bound(primes_.begin(), primes_.end(), lo);
		auto e = std::upper_bound(primes_.begin(), primes_.end(), hi);
		if (e < b)
			e = b;
		return {b, e};
	}

	/// Number of primes <= y, y <= limit.
	u64 pi(u64 y) const
	{
		return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), y) - primes_.begin());
	}

private:
	u64 limit_;
	std::vector<bool> composite_;
	std::vector<u64> primes_;
};

namespace detail {
inline constexpr u64 kTrialLimit = 1'000'000;

inline const PrimeTable &trial_primes()
{
	static const PrimeTable table(kTrialLimit);
	return table;
}
} // namespace detail

// =============================================================================
// Jacobi symbol
// =============================================================================

/// Jacobi symbol (a/n) for odd n >= 1; coincides with Legendre for prime n.
inline int jacobi(i64 a, i64 n)
{
	if (n <= 0 || n % 2 == 0)
		throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(n));
	u64 m = static_cast<u64>(n);
	u64 x = mod_floor(a, m);
	int t = 1;
	while (x != 0)
	{
		while ((x & 1) == 0)
		{
			x >>= 1;
			u64 r = m & 7;
			if (r == 3 || r == 5)
				t = -t;
		}
		std::swap(x, m);
		if ((x & 3) == 3 && (m & 3) == 3)
			t = -t;
		x %= m;
	}
	return m == 1 ? t : 0;
}

// =============================================================================
// Factorization
// =============================================================================

/// Prime factorization of a positive 64-bit integer, primes ascending.
struct Factorization
{
	u64 value = 1;
	std::vector<std::pair<u64, unsigned>> factors;

	/// Number of distinct prime divisors.
	std::size_t nu() const { return factors.size(); }

	bool is_squarefree() const
	{
		return std::all_of(factors.begin(), factors.end(), [](auto &f) { return f.second == 1; });
	}

	/// Moebius function; 0 when not squarefree.
	int mobius() const
	{
		if (!is_squarefree())
			return 0;
		return nu() % 2 ? -1 : 1;
	}

	u64 phi() const
	{
		u64 r = 1;
		for (auto [p, e] : factors)
		{
			r *= p - 1;
			for (unsigned i = 1; i < e; ++i)
				r *= p;
		}
		return r;
	}

	/// Product of prime^exponent, recomputed from the factor list.
	u64 product() const
	{
		u128 r = 1;
		for (auto [p, e] : factors)
			for (unsigned i = 0; i < e; ++i)
			{
				r *= p;
				if (r > ~u64{0})
					throw std::overflow_error("Factorization::product overflow");
			}
		return static_cast<u64>(r);
	}

	bool divisible_by(u64 q) const
	{
		return std::any_of(factors.begin(), factors.end(), [q](auto &f) { return f.first == q; });
	}
};

namespace detail {
inline u64 absdiff(u64 a, u64 b) { return a > b ? a - b : b - a; }

/// A nontrivial factor of the odd composite n (Brent's cycle variant).
inline u64 pollard_brent(u64 n, std::mt19937_64 &rng)
{
	if (n % 2 == 0)
		return 2;
	std::uniform_int_distribution<u64> dist(1, n - 1);
	for (;;)
	{
		u64 y = dist(rng), c = dist(rng), g = 1, q = 1, x = 0, ys = 0;
		const u64 m = 128;
		auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
		for (u64 r = 1; g == 1; r *= 2)
		{
			x = y;
			for (u64 i = 0; i < r; ++i)
				y = f(y);
			for (u64 k = 0; k < r && g == 1; k += m)
			{
				ys = y;
				for (u64 i = 0; i < std::min(m, r - k); ++i)
				{
					y = f(y);
					q = mulmod(q, absdiff(x, y), n);
				}
				g = std::gcd(q, n);
			}
		}
		if (g == n)
		{
			do
			{
				ys = f(ys);
				g = std::gcd(absdiff(x, ys), n);
			} while (g == 1);
		}
		if (g != n)
			return g;
	}
}

inline void factor_rest(u64 n, std::map<u64, unsigned> &out, std::mt19937_64 &rng)
{
	if (n == 1)
		return;
	if (is_prime(n))
	{
		++out[n];
		return;
	}
	u64 d = pollard_brent(n, rng);
	factor_rest(d, out, rng);
	factor_rest(n / d, out, rng);
}
} // namespace detail

/// Trial division by primes below 10^6, then Pollard-Brent on the cofactor.
inline Factorization factorize(u64 n, u64 seed = kDefaultSeed)
{
	if (n == 0)
		throw std::invalid_argument("factorize: zero has no factorization");
	Factorization f;
	f.value = n;
	u64 rest = n;
	for (u64 p : detail::trial_primes().primes())
	{
		if (p * p > rest)
			break;
		if (rest % p == 0)
		{
			unsigned e = 0;
			while (rest % p == 0)
			{
				rest /= p;
				++e;
			}
			f.factors.emplace_back(p, e);
		}
	}
	if (rest == 1)
		return f;

	constexpr u64 limit = detail::kTrialLimit;
	if (rest < limit * limit)
	{
		// no factor below 10^6 and rest < 10^12: prime
		f.factors.emplace_back(rest, 1);
		return f;
	}
	std::map<u64, unsigned> big;
	std::mt19937_64 rng(seed ^ n);
	detail::factor_rest(rest, big, rng);
	for (auto [p, e] : big)
		f.factors.emplace_back(p, e);
	std::sort(f.factors.begin(), f.factors.end());
	return f;
}

/// Factorization of a*b from the factorizations of a and b.
inline Factorization multiply(const Factorization &a, const Factorization &b)
{
	std::map<u64, unsigned> m;
	for (auto [p, e] : a.factors)
		m[p] += e;
	for (auto [p, e] : b.factors)
		m[p] += e;
	Factorization r;
	u128 v = static_cast<u128>(a.value) * b.value;
	if (v > ~u64{0})
		throw std::overflow_error("multiply: product exceeds 64 bits");
	r.value = static_cast<u64>(v);
	r.factors.assign(m.begin(), m.end());
	return r;
}

inline u64 euler_phi(u64 n) { return factorize(n).phi(); }

// =============================================================================
// Chinese remainder theorem
// =============================================================================

class non_coprime_moduli : public std::invalid_argument
{
public:
	non_coprime_moduli(std::size_t i, std::size_t j, u64 mi, u64 mj)
	    : std::invalid_argument("crt: moduli " + std::to_string(mi) + " (#" + std::to_string(i) + ") and " +
	                            std::to_string(mj) + " (#" + std::to_string(j) + ") are not coprime"),
	      first(i), second(j)
	{}
	std::size_t first, second;
};

struct Congruent
{
	i64 residue;
	u64 modulus;
};

struct CrtSolution
{
	u64 u; // 0 <= u < v
	u64 v; // product of the moduli
};

inline CrtSolution crt(std::span<const Congruent> system)
{
	for (std::size_t i = 0; i < system.size(); ++i)
	{
		if (system[i].modulus == 0)
			throw std::invalid_argument("crt: modulus must be positive");
		for (std::size_t j = i + 1; j < system.size(); ++j)
			if (std::gcd(system[i].modulus, system[j].modulus) != 1)
				throw non_coprime_moduli(i, j, system[i].modulus, system[j].modulus);
	}
	u64 x = 0, big = 1;
	for (auto [r, m] : system)
	{
		u64 rm = mod_floor(r, m);
		// x + big * t == rm (mod m)
		u64 diff = mod_floor(static_cast<i128>(rm) - static_cast<i128>(x % m), m);
		u64 t = mulmod(diff, invmod(big % m, m), m);
		u128 nbig = static_cast<u128>(big) * m;
		if (nbig > ~u64{0})
			throw std::overflow_error("crt: modulus product exceeds 64 bits");
		x = static_cast<u64>(x + static_cast<u128>(big) * t);
		big = static_cast<u64>(nbig);
	}
	return {big == 1 ? 0 : x % big, big};
}

inline CrtSolution crt(std::initializer_list<Congruent> system)
{
	return crt(std::span<const Congruent>(system.begin(), system.size()));
}

// =============================================================================
// Logarithmic integral and progression counts
// =============================================================================

namespace detail {
template <class F>
double adaptive_simpson(F &f, double a, double b, double fa, double fm, double fb, double whole, double eps,
                        int depth)
{
	double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
	double flm = f(lm), frm = f(rm);
	double left = (m - a) / 6 * (fa + 4 * flm + fm);
	double right = (b - m) / 6 * (fm + 4 * frm + fb);
	double delta = left + right - whole;
	if (depth <= 0 || std::abs(delta) <= 15 * eps)
		return left + right + delta / 15;
	return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
	       adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}
} // namespace detail

/// Li(y) = int_2^y dt / log t, integrated in s = log t.
inline double li(double y)
{
	if (!(y >= 2))
		throw std::domain_error("li: requires y >= 2");
	if (y == 2)
		return 0;
	auto f = [](double s) { return std::exp(s) / s; };
	double a = std::log(2.0), b = std::log(y), m = (a + b) / 2;
	double fa = f(a), fm = f(m), fb = f(b);
	double whole = (b - a) / 6 * (fa + 4 * fm + fb);
	double eps = 1e-11 * std::max(1.0, std::abs(whole));
	return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 60);
}

/// pi(y; m, s) with its deviation from Li(y)/phi(m).
struct ProgressionCount
{
	u64 y;
	u64 m;
	u64 s;
	u64 count;
	double error;
};

inline ProgressionCount count_progression(const PrimeTable &table, u64 y, u64 m, i64 s)
{
	if (m == 0)
		throw std::invalid_argument("count_progression: modulus must be positive");
	if (y < 2)
		throw std::invalid_argument("count_progression: requires y >= 2");
	u64 r = mod_floor(s, m);
	if (std::gcd(r, m) != 1)
		throw std::invalid_argument("count_progression: residue " + std::to_string(s) + " not coprime to " +
		                            std::to_string(m));
	if (y > table.limit())
		throw std::out_of_range("count_progression: y beyond prime table");
	u64 count = 0;
	for (u64 p : table.range(2, y))
		if (p % m == r)
			++count;
	double err = static_cast<double>(count) - li(static_cast<double>(y)) / static_cast<double>(euler_phi(m));
	return {y, m, r, count, err};
}

inline ProgressionCount count_progression(u64 y, u64 m, i64 s)
{
	return count_progression(PrimeTable(y), y, m, s);
}

/**
 * max over s coprime to m of |E(x; m, s)|.
 *
 * Evaluated at y = x only; the outer maximum over y <= x is not taken.
 * Residue classes holding no prime contribute |0 - Li(x)/phi(m)|.
 */
inline double max_error(const PrimeTable &table, u64 x, u64 m)
{
	if (x < 2 || m == 0)
		throw std::invalid_argument("max_error: requires x >= 2 and m >= 1");
	if (x > table.limit())
		throw std::out_of_range("max_error: x beyond prime table");
	std::vector<u64> residues;
	for (u64 p : table.range(2, x))
	{
		u64 r = p % m;
		if (std::gcd(r, m) == 1)
			residues.push_back(r);
	}
	std::sort(residues.begin(), residues.end());
	u64 phi_m = euler_phi(m);
	double expected = li(static_cast<double>(x)) / static_cast<double>(phi_m);
	double best = 0;
	u64 classes_hit = 0;
	for (std::size_t i = 0; i < residues.size();)
	{
		std::size_t j = i;
		while (j < residues.size() && residues[j] == residues[i])
			++j;
		best = std::max(best, std::abs(static_cast<double>(j - i) - expected));
		++classes_hit;
		i = j;
	}
	if (classes_hit < phi_m)
		best = std::max(best, expected);
	return best;
}

inline double max_error(u64 x, u64 m) { return max_error(PrimeTable(x), x, m); }

} // namespace qartin
