#pragma once

/**
 * @file sieve.hpp
 * @brief Exact evaluation of the sieve quantities attached to the sequence
 * A = { p^2 - 1 : p <= x, p = u (mod v) }.
 *
 * Counts are exact integers; only Li, logarithms and the main terms derived
 * from them are floating point.
 */

#include "qartin/arith.hpp"
#include "qartin/errors.hpp"
#include "qartin/rational.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qartin {

/// Sifting limit of the Selberg lower-bound sieve in dimension 2.
inline constexpr double kSieveThreshold = 4.42;

struct SieveConfig
{
	u64 x = 0;
	u64 u = 1;
	u64 v = 1;
	u64 z = 2;
	double delta1 = 0.01;
	double A = 1;
	double c2 = 1;
	double c3 = 1;

	void validate() const
	{
		auto bad = [](const std::string &m) { throw config_error("sieve config: " + m); };
		if (x < 2)
			bad("x must be >= 2");
		if (v == 0)
			bad("v must be positive");
		if (std::gcd(u % v, v) != 1)
			bad("gcd(u, v) must be 1");
		if (z < 2 || z > x)
			bad("need 2 <= z <= x (z = " + std::to_string(z) + ", x = " + std::to_string(x) + ")");
		if (!(delta1 > 0 && delta1 < 0.125))
			bad("delta1 must lie in (0, 1/8)");
		if (!(A > 0))
			bad("A must be positive");
		if (!(c2 >= 0))
			bad("c2 must be nonnegative");
		if (!(c3 > 0))
			bad("c3 must be positive");
	}
};

/// Validated config plus the prime table and the progression primes it induces.
class SieveContext
{
public:
	explicit SieveContext(SieveConfig cfg) : cfg_((cfg.validate(), cfg)), table_(cfg.x)
	{
		cfg_.u %= cfg_.v;
		for (u64 p : table_.primes())
			if (p % cfg_.v == cfg_.u)
				progression_.push_back(p);
		phi_v_ = euler_phi(cfg_.v);
		X_ = li(static_cast<double>(cfg_.x)) / static_cast<double>(phi_v_);
	}

	const SieveConfig &config() const { return cfg_; }
	const PrimeTable &table() const { return table_; }
	/// primes p <= x with p = u (mod v)
	const std::vector<u64> &progression() const { return progression_; }
	/// Li(x) / phi(v)
	double X() const { return X_; }
	u64 phi_v() const { return phi_v_; }

private:
	SieveConfig cfg_;
	PrimeTable table_;
	std::vector<u64> progression_;
	u64 phi_v_ = 1;
	double X_ = 0;
};

// =============================================================================
// Local densities
// =============================================================================

/// #{ m in [1, d] : m^2 = 1 (mod d), gcd(m, d) = 1 }.
inline u64 rho(u64 d)
{
	if (d == 0)
		throw std::invalid_argument("rho: d must be positive");
	if (d <= 1'000'000)
	{
		// m^2 = 1 (mod d) already forces gcd(m, d) = 1
		u64 count = 0;
		for (u64 m = 1; m <= d; ++m)
			if (mulmod(m, m, d) == 1 % d)
				++count;
		return count;
	}
	u64 r = 1;
	for (auto [q, e] : factorize(d).factors)
		r *= q != 2 ? 2 : e == 1 ? 1 : e == 2 ? 2 : 4;
	return r;
}

/// omega(d) = 2^nu(d) d / phi(d) for squarefree d.
inline Rational omega(u64 d)
{
	if (d == 0)
		throw std::invalid_argument("omega: d must be positive");
	auto f = factorize(d);
	if (!f.is_squarefree())
		throw std::invalid_argument("omega: " + std::to_string(d) + " is not squarefree");
	return Rational(static_cast<i128>(d) << f.nu(), static_cast<i128>(f.phi()));
}

struct SieveRow
{
	u64 d = 1;
	u64 rho = 1;
	u64 Ad = 0;
	double main = 0; // (omega(d)/d) X
	double Rd = 0;   // Ad - main
};

namespace detail {
inline Factorization checked_sieve_modulus(const SieveContext &ctx, u64 d, const char *who)
{
	if (d == 0)
		throw std::invalid_argument(std::string(who) + ": d must be positive");
	auto f = factorize(d);
	if (!f.is_squarefree())
		throw std::invalid_argument(std::string(who) + ": " + std::to_string(d) + " is not squarefree");
	if (std::gcd(d, ctx.config().v) != 1)
		throw std::invalid_argument(std::string(who) + ": gcd(" + std::to_string(d) + ", v) != 1");
	return f;
}
} // namespace detail

/// |A_d| by direct enumeration of the progression.
inline SieveRow count_Ad(const SieveContext &ctx, u64 d)
{
	auto f = detail::checked_sieve_modulus(ctx, d, "count_Ad");
	SieveRow row;
	row.d = d;
	row.rho = rho(d);
	for (u64 p : ctx.progression())
		if (mulmod(p % d, p % d, d) == 1 % d)
			++row.Ad;
	row.main = std::ldexp(ctx.X(), static_cast<int>(f.nu())) / static_cast<double>(f.phi());
	row.Rd = static_cast<double>(row.Ad) - row.main;
	return row;
}

/// |A_d| as a sum of pi(x; dv, l_m) over the rho(d) classes m^2 = 1 (mod d).
inline u64 count_Ad_crt(const SieveContext &ctx, u64 d)
{
	detail::checked_sieve_modulus(ctx, d, "count_Ad_crt");
	const auto &cfg = ctx.config();
	u64 total = 0;
	for (u64 m = 1; m <= d; ++m)
	{
		if (mulmod(m, m, d) != 1 % d)
			continue;
		auto [l, dv] = crt({{static_cast<i64>(cfg.u), cfg.v}, {static_cast<i64>(m), d}});
		total += count_progression(ctx.table(), cfg.x, dv, static_cast<i64>(l)).count;
	}
	return total;
}

/// Squarefree d in [d_min, d_max] coprime to v, in increasing order.
inline std::vector<SieveRow> sieve_rows(const SieveContext &ctx, u64 d_min, u64 d_max)
{
	std::vector<SieveRow> rows;
	for (u64 d = std::max<u64>(d_min, 1); d <= d_max; ++d)
		if (std::gcd(d, ctx.config().v) == 1 && factorize(d).is_squarefree())
			rows.push_back(count_Ad(ctx, d));
	return rows;
}

// =============================================================================
// Mertens-type sums and products
// =============================================================================

/// sum_{w <= q < z} 2 log q / (q - 1)  -  2 log(z / w).
inline double mertens_check(const PrimeTable &table, u64 w, u64 z)
{
	if (w < 2 || w > z)
		throw std::invalid_argument("mertens_check: requires 2 <= w <= z");
	if (z - 1 > table.limit())
		throw std::out_of_range("mertens_check: z beyond prime table");
	double s = 0;
	for (u64 q : table.range(w, z - 1))
		s += 2 * std::log(static_cast<double>(q)) / static_cast<double>(q - 1);
	return s - 2 * std::log(static_cast<double>(z) / static_cast<double>(w));
}

inline double mertens_check(u64 w, u64 z) { return mertens_check(PrimeTable(z), w, z); }

struct ProductLower
{
	double product = 1;    // prod_{3 < q < z, q !| v} (1 - 2/(q - 1))
	double comparator = 0; // 1 / log^2 z
	double ratio = 0;      // product * log^2 z
};

inline ProductLower product_lower(const PrimeTable &table, u64 z, u64 v)
{
	if (z <= 3)
		throw std::invalid_argument("product_lower: requires z > 3");
	if (z - 1 > table.limit())
		throw std::out_of_range("product_lower: z beyond prime table");
	ProductLower r;
	for (u64 q : table.range(5, z - 1))
		if (v % q != 0)
			r.product *= 1 - 2.0 / static_cast<double>(q - 1);
	double lz = std::log(static_cast<double>(z));
	r.comparator = 1 / (lz * lz);
	r.ratio = r.product * lz * lz;
	return r;
}

inline ProductLower product_lower(u64 z, u64 v) { return product_lower(PrimeTable(z), z, v); }

// =============================================================================
// Remainder sum and sifting function
// =============================================================================

struct RemainderSum
{
	double sum = 0;        // sum mu^2(d) 3^nu(d) |R_d|
	double X = 0;
	double d_limit = 0;    // sqrt(X) / (log x)^c2, exclusive
	u64 terms = 0;
	double comparator = 0; // c3 X / log^A X
	double ratio = 0;      // sum / X
};

inline RemainderSum remainder_sum(const SieveContext &ctx)
{
	const auto &cfg = ctx.config();
	RemainderSum r;
	r.X = ctx.X();
	double logx = std::log(static_cast<double>(cfg.x));
	r.d_limit = r.X > 0 ? std::sqrt(r.X) / std::pow(logx, cfg.c2) : 0;
	for (u64 d = 1; static_cast<double>(d) < r.d_limit; ++d)
	{
		if (std::gcd(d, cfg.v) != 1)
			continue;
		auto f = factorize(d);
		if (!f.is_squarefree())
			continue;
		auto row = count_Ad(ctx, d);
		r.sum += std::pow(3.0, static_cast<double>(f.nu())) * std::abs(row.Rd);
		++r.terms;
	}
	r.comparator = r.X > 1 ? cfg.c3 * r.X / std::pow(std::log(r.X), cfg.A) : std::numeric_limits<double>::quiet_NaN();
	r.ratio = r.X > 0 ? r.sum / r.X : std::numeric_limits<double>::quiet_NaN();
	return r;
}

/// Primes of the progression whose p^2 - 1 has no prime factor q < z, q !| v.
inline u64 survivor_count(const SieveContext &ctx, u64 z)
{
	const auto &cfg = ctx.config();
	if (z < 2)
		throw std::invalid_argument("survivor_count: requires z >= 2");
	PrimeTable small(z);
	std::vector<u64> sieving;
	for (u64 q : small.range(2, z - 1))
		if (cfg.v % q != 0)
			sieving.push_back(q);
	u64 count = 0;
	for (u64 p : ctx.progression())
	{
		bool ok = true;
		for (u64 q : sieving)
			if ((p - 1) % q == 0 || (p + 1) % q == 0)
			{
				ok = false;
				break;
			}
		count += ok;
	}
	return count;
}

inline u64 survivor_count(const SieveContext &ctx) { return survivor_count(ctx, ctx.config().z); }

struct SieveBoundReport
{
	u64 survivors = 0;
	double X = 0;
	double main_product = 0;    // X prod_{q < z, q !| v} (1 - omega(q)/q)
	double sieve_argument = 0;  // log X / (2 log z)
	double threshold = kSieveThreshold;
	bool beyond_threshold = false;
	double argument_at_delta1 = 0; // value for z = X^{1/8 + delta1}: 1 / (2 (1/8 + delta1))
	u64 z_at_delta1 = 0;           // floor(x^{1/8 + delta1})
	double fitted_c = 0;           // survivors * log^3 x / x
};

inline SieveBoundReport sieve_bound_report(const SieveContext &ctx)
{
	const auto &cfg = ctx.config();
	SieveBoundReport r;
	r.survivors = survivor_count(ctx);
	r.X = ctx.X();
	double prod = 1;
	PrimeTable small(cfg.z);
	for (u64 q : small.range(2, cfg.z - 1))
		if (cfg.v % q != 0)
			prod *= 1 - 2.0 / static_cast<double>(q - 1);
	r.main_product = r.X * prod;
	double lz = std::log(static_cast<double>(cfg.z));
	r.sieve_argument = r.X > 0 && lz > 0 ? std::log(r.X) / (2 * lz) : std::numeric_limits<double>::quiet_NaN();
	r.beyond_threshold = r.sieve_argument > kSieveThreshold;
	r.argument_at_delta1 = 0.5 / (0.125 + cfg.delta1);
	r.z_at_delta1 = static_cast<u64>(std::floor(std::pow(static_cast<double>(cfg.x), 0.125 + cfg.delta1)));
	double lx = std::log(static_cast<double>(cfg.x));
	r.fitted_c = static_cast<double>(r.survivors) * lx * lx * lx / static_cast<double>(cfg.x);
	return r;
}

} // namespace qartin
