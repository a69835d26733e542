#pragma once

/**
 * @file experiments.hpp
 * @brief Order-attainment scans over inert primes and the supporting checks:
 * the divisibility chain between ord(a), ord(N(a)) and ord(M(a)),
 * multiplicative independence of norms and of norm-one ratios, subgroup sizes
 * in F_p^*, and the growth of #{p : |<gens> mod p| < y}.
 */

#include "qartin/arith.hpp"
#include "qartin/fp2.hpp"
#include "qartin/parallel.hpp"
#include "qartin/quadfield.hpp"
#include "qartin/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qartin {

// =============================================================================
// Families and scans
// =============================================================================

struct AlphaFamily
{
	FieldContext field;
	std::vector<QuadInt> members;
	std::vector<std::string> labels;

	AlphaFamily(FieldContext f, std::vector<QuadInt> m, std::vector<std::string> names = {})
	    : field(std::move(f)), members(std::move(m)), labels(std::move(names))
	{
		if (members.empty())
			throw std::invalid_argument("AlphaFamily: needs at least one member");
		if (!labels.empty() && labels.size() != members.size())
			throw std::invalid_argument("AlphaFamily: label count differs from member count");
		for (const auto &a : members)
		{
			if (a.delta != field.delta())
				throw std::invalid_argument("AlphaFamily: member " + a.to_string() + " from another field");
			if (norm(a) == 0)
				throw std::invalid_argument("AlphaFamily: member " + a.to_string() + " has zero norm");
		}
		if (labels.empty())
			for (const auto &a : members)
				labels.push_back(a.to_string());
	}

	std::size_t size() const { return members.size(); }
};

struct ScanRecord
{
	std::size_t member = 0;
	OrderRecord rec;
};

struct SkippedPrime
{
	u64 p;
	std::string reason;
};

struct ScanSummary
{
	u64 prime_count = 0;                // primes actually scanned
	std::vector<u64> member_attained;   // per member: primes with ord >= (p^2-1)/24
	u64 family_attained = 0;            // primes where some member attains
	std::map<u64, u64> divisor_profile; // (p^2 - 1)/ord -> number of records
	u64 remark12_violations = 0;

	double fraction(u64 n) const { return prime_count ? static_cast<double>(n) / static_cast<double>(prime_count) : 0; }
};

struct ScanResult
{
	std::vector<ScanRecord> records; // sorted by (p, member)
	std::vector<SkippedPrime> skipped;
	ScanSummary summary;
};

/// ord_M | p+1, ord_N | p-1, both divide ord_alpha, and ord_M*ord_N | 2*ord_alpha.
inline std::optional<std::string> remark12_violation(const OrderRecord &r)
{
	if ((r.p + 1) % r.ord_M != 0)
		return "ord_M does not divide p+1";
	if ((r.p - 1) % r.ord_N != 0)
		return "ord_N does not divide p-1";
	if (r.ord_alpha % r.ord_M != 0)
		return "ord_M does not divide ord_alpha";
	if (r.ord_alpha % r.ord_N != 0)
		return "ord_N does not divide ord_alpha";
	if ((static_cast<u128>(2) * r.ord_alpha) % (static_cast<u128>(r.ord_M) * r.ord_N) != 0)
		return "ord_M*ord_N does not divide 2*ord_alpha";
	return std::nullopt;
}

namespace detail {
/// Why p cannot be scanned for this family, or nullopt.
inline std::optional<std::string> scan_exclusion(const AlphaFamily &family, u64 p)
{
	if (p == 2)
		return "p = 2";
	if (!is_prime(p))
		return "not prime";
	if (static_cast<u64>(family.field.delta()) % p == 0)
		return "ramified";
	if (!is_inert(p, family.field))
		return "split";
	for (std::size_t i = 0; i < family.size(); ++i)
		if (norm(family.members[i]) % static_cast<i64>(p) == 0)
			return "divides N(" + family.labels[i] + ")";
	return std::nullopt;
}

struct PrimeScan
{
	std::optional<std::string> skip;
	std::vector<OrderRecord> recs;
};

inline std::vector<u64> sorted_unique(std::span<const u64> primes)
{
	std::vector<u64> ps(primes.begin(), primes.end());
	std::sort(ps.begin(), ps.end());
	ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
	return ps;
}
} // namespace detail

/// Order records for every (p, member); ineligible primes are skipped and listed.
inline ScanResult order_scan(const AlphaFamily &family, std::span<const u64> primes, unsigned workers = 1,
                             u64 seed = kDefaultSeed)
{
	auto ps = detail::sorted_unique(primes);
	auto per_prime = parallel_map(ps.size(), workers, [&](std::size_t i) {
		detail::PrimeScan out;
		u64 p = ps[i];
		out.skip = detail::scan_exclusion(family, p);
		if (out.skip)
			return out;
		Fp2Context ctx(p, family.field, seed);
		for (const auto &a : family.members)
			out.recs.push_back(order_record(a, ctx));
		return out;
	});

	ScanResult res;
	auto &s = res.summary;
	s.member_attained.assign(family.size(), 0);
	for (std::size_t i = 0; i < ps.size(); ++i)
	{
		auto &pr = per_prime[i];
		if (pr.skip)
		{
			res.skipped.push_back({ps[i], *pr.skip});
			continue;
		}
		++s.prime_count;
		bool any = false;
		for (std::size_t m = 0; m < pr.recs.size(); ++m)
		{
			const auto &r = pr.recs[m];
			res.records.push_back({m, r});
			++s.divisor_profile[r.index()];
			if (r.attained)
			{
				++s.member_attained[m];
				any = true;
			}
			if (remark12_violation(r))
				++s.remark12_violations;
		}
		s.family_attained += any;
	}
	return res;
}

struct Remark12Violation
{
	u64 p;
	std::size_t member;
	std::string what;
};

struct Remark12Report
{
	u64 records = 0;
	std::vector<Remark12Violation> violations;
	bool ok() const { return violations.empty(); }
};

inline Remark12Report remark12_check(const ScanResult &scan)
{
	Remark12Report rep;
	for (const auto &r : scan.records)
	{
		++rep.records;
		if (auto why = remark12_violation(r.rec))
			rep.violations.push_back({r.rec.p, r.member, *why});
	}
	return rep;
}

inline Remark12Report remark12_verify(const AlphaFamily &family, std::span<const u64> primes, unsigned workers = 1)
{
	return remark12_check(order_scan(family, primes, workers));
}

// =============================================================================
// Multiplicative independence
// =============================================================================

/// Verdict for a list of nonzero rationals. A relation e has prod v_i^e_i = relation_sign.
struct RationalIndependence
{
	bool independent = true;
	std::size_t rank = 0;
	std::vector<i64> relation;
	int relation_sign = 1;
};

namespace detail {
inline u64 abs_u64(i128 v)
{
	u128 m = abs128(v);
	if (m > ~u64{0})
		throw std::overflow_error("independence: value exceeds 64 bits");
	return static_cast<u64>(m);
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>> &m)
{
	std::vector<std::size_t> pivots;
	if (m.empty())
		return pivots;
	std::size_t rows = m.size(), cols = m[0].size(), r = 0;
	for (std::size_t c = 0; c < cols && r < rows; ++c)
	{
		std::size_t piv = r;
		while (piv < rows && m[piv][c].is_zero())
			++piv;
		if (piv == rows)
			continue;
		std::swap(m[piv], m[r]);
		Rational inv = m[r][c].reciprocal();
		for (auto &e : m[r])
			e *= inv;
		for (std::size_t i = 0; i < rows; ++i)
		{
			if (i == r || m[i][c].is_zero())
				continue;
			Rational f = m[i][c];
			for (std::size_t j = 0; j < cols; ++j)
				m[i][j] -= f * m[r][j];
		}
		pivots.push_back(c);
		++r;
	}
	return pivots;
}

inline i64 gcd_i64(i64 a, i64 b) { return static_cast<i64>(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b)); }
} // namespace detail

/**
 * Exact verdict from the exponent matrix over all primes occurring in the
 * numerators and denominators. The sign is torsion and does not affect
 * independence; it is reported as the value of the relation product.
 */
inline RationalIndependence mult_indep_rational(std::span<const Rational> values)
{
	const std::size_t k = values.size();
	std::vector<std::map<u64, i64>> exps(k);
	std::map<u64, std::size_t> column;
	for (std::size_t i = 0; i < k; ++i)
	{
		if (values[i].is_zero())
			throw std::invalid_argument("mult_indep_rational: zero is not allowed");
		for (auto [p, e] : factorize(detail::abs_u64(values[i].num())).factors)
			exps[i][p] += e;
		for (auto [p, e] : factorize(detail::abs_u64(values[i].den())).factors)
			exps[i][p] -= e;
		for (auto [p, e] : exps[i])
			column.emplace(p, 0);
	}
	std::size_t c = 0;
	for (auto &[p, idx] : column)
		idx = c++;

	// transpose: rows = primes, columns = values; its kernel holds the relations
	std::vector<std::vector<Rational>> mt(column.size(), std::vector<Rational>(k));
	for (std::size_t i = 0; i < k; ++i)
		for (auto [p, e] : exps[i])
			mt[column[p]][i] = Rational(e);
	auto pivots = detail::rref(mt);

	RationalIndependence res;
	res.rank = pivots.size();
	res.independent = res.rank == k;
	if (res.independent)
		return res;

	std::size_t free = 0;
	while (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
		++free;
	std::vector<Rational> e(k, Rational(0));
	e[free] = Rational(1);
	for (std::size_t r = 0; r < pivots.size(); ++r)
		e[pivots[r]] = -mt[r][free];

	i128 l = 1;
	for (auto &x : e)
		l = detail::checked_mul(l / static_cast<i128>(detail::gcd128(static_cast<u128>(l), static_cast<u128>(x.den()))),
		                        x.den());
	res.relation.resize(k);
	i64 g = 0;
	for (std::size_t i = 0; i < k; ++i)
	{
		Rational s = e[i] * Rational::from_i128(l);
		res.relation[i] = static_cast<i64>(s.num());
		g = detail::gcd_i64(g, res.relation[i]);
	}
	for (auto &x : res.relation)
		x /= g;
	auto first = std::find_if(res.relation.begin(), res.relation.end(), [](i64 x) { return x != 0; });
	if (*first < 0)
		for (auto &x : res.relation)
			x = -x;

	// re-verify from fresh valuations
	std::map<u64, i128> total;
	i64 negatives = 0;
	for (std::size_t i = 0; i < k; ++i)
	{
		u64 n = detail::abs_u64(values[i].num()), d = detail::abs_u64(values[i].den());
		for (auto &[p, idx] : column)
			total[p] += static_cast<i128>(res.relation[i]) *
			            (static_cast<i128>(valuation(n, p)) - static_cast<i128>(valuation(d, p)));
		if (values[i].sign() < 0)
			negatives += res.relation[i];
	}
	for (auto &[p, t] : total)
		if (t != 0)
			throw invariant_violation("mult_indep_rational: relation fails at prime " + std::to_string(p));
	res.relation_sign = (negatives % 2 == 0) ? 1 : -1;
	return res;
}

/// Bounded search for prod v_i^e_i = 1 among norm-one elements.
struct NormOneIndependence
{
	bool relation_found = false;
	std::vector<i64> relation;
	i64 bound = 0;        // max |e_i| actually searched
	u64 screened = 0;     // candidates passing the real-log screen
	u64 exact_checks = 0; // candidates checked in exact arithmetic
	u64 overflowed = 0;   // exact checks abandoned on 128-bit overflow
};

/**
 * Every exponent vector with max |e_i| <= bound is screened by the real
 * embedding (|sum e_i log|v_i|| small, sign product +1), and survivors are
 * checked exactly. The embedding is injective, so the screen never discards
 * a true relation. The bound is lowered until (2B+1)^k <= budget; the result
 * certifies independence only up to the bound it reports.
 */
inline NormOneIndependence mult_indep_norm_one(std::span<const QuadElem> values, i64 bound = 10,
                                               u64 budget = 50'000'000)
{
	const std::size_t k = values.size();
	if (k == 0)
		throw std::invalid_argument("mult_indep_norm_one: empty input");
	for (const auto &v : values)
	{
		if (v.delta() != values[0].delta())
			throw std::invalid_argument("mult_indep_norm_one: values from different fields");
		if (norm(v) != Rational(1))
			throw std::invalid_argument("mult_indep_norm_one: " + v.to_string() + " does not have norm 1");
		if (v.is_rational())
			throw std::invalid_argument("mult_indep_norm_one: " + v.to_string() + " is +-1");
	}
	NormOneIndependence res;
	i64 b = std::max<i64>(0, bound);
	while (b > 0 && std::pow(2.0 * static_cast<double>(b) + 1, static_cast<double>(k)) > static_cast<double>(budget))
		--b;
	res.bound = b;

	std::vector<long double> logs(k);
	std::vector<int> neg(k);
	long double scale = 1;
	for (std::size_t i = 0; i < k; ++i)
	{
		long double x = values[i].real_embedding();
		logs[i] = std::log(std::fabs(x));
		neg[i] = x < 0;
		scale += static_cast<long double>(b) * std::fabs(logs[i]);
	}
	const long double tol = 1e-9L * scale;
	std::vector<long double> suffix(k + 1, 0);
	for (std::size_t i = k; i-- > 0;)
		suffix[i] = suffix[i + 1] + static_cast<long double>(b) * std::fabs(logs[i]);

	std::vector<std::vector<i64>> candidates;
	std::vector<i64> e(k, 0);
	std::function<void(std::size_t, long double)> walk = [&](std::size_t i, long double partial) {
		if (i == k)
		{
			auto first = std::find_if(e.begin(), e.end(), [](i64 x) { return x != 0; });
			if (first == e.end() || *first < 0)
				return;
			i64 parity = 0;
			for (std::size_t j = 0; j < k; ++j)
				parity += neg[j] * e[j];
			if (parity % 2 == 0 && std::fabs(partial) <= tol)
				candidates.push_back(e);
			return;
		}
		for (i64 x = -b; x <= b; ++x)
		{
			long double next = partial + static_cast<long double>(x) * logs[i];
			if (std::fabs(next) > suffix[i + 1] + tol)
				continue;
			e[i] = x;
			walk(i + 1, next);
		}
		e[i] = 0;
	};
	walk(0, 0);
	res.screened = candidates.size();

	auto height = [](const std::vector<i64> &v) {
		i64 h = 0;
		for (i64 x : v)
			h = std::max(h, x < 0 ? -x : x);
		return h;
	};
	std::stable_sort(candidates.begin(), candidates.end(),
	                 [&](const auto &l, const auto &r) { return height(l) < height(r); });
	for (const auto &cand : candidates)
	{
		++res.exact_checks;
		try
		{
			QuadElem lhs = values[0].make(Rational(1)), rhs = lhs;
			for (std::size_t j = 0; j < k; ++j)
			{
				if (cand[j] > 0)
					lhs = lhs * pow(values[j], cand[j]);
				else if (cand[j] < 0)
					rhs = rhs * pow(values[j], -cand[j]);
			}
			if (lhs == rhs)
			{
				res.relation_found = true;
				res.relation = cand;
				return res;
			}
		}
		catch (const std::overflow_error &)
		{
			++res.overflowed;
		}
	}
	return res;
}

// =============================================================================
// Subgroups of F_p^* and growth
// =============================================================================

class dependent_generators : public std::invalid_argument
{
public:
	dependent_generators(std::vector<i64> rel, int sign)
	    : std::invalid_argument("generators are multiplicatively dependent"), relation(std::move(rel)),
	      relation_sign(sign)
	{}
	std::vector<i64> relation;
	int relation_sign;
};

/// |<gens> mod p| given the factorization of p - 1.
inline u64 subgroup_size(u64 p, const Factorization &fact_pm1, std::span<const i64> gens)
{
	u64 size = 1;
	for (i64 g : gens)
	{
		u64 c = mod_floor(g, p);
		if (c == 0)
			throw std::invalid_argument("subgroup_size: p = " + std::to_string(p) + " divides generator " +
			                            std::to_string(g));
		u64 ord = detail::order_from_factors(p - 1, fact_pm1, [&](u64 n) { return powmod(c, n, p) == 1; });
		size = std::lcm(size, ord);
	}
	return size;
}

/// lcm of the generator orders: the size of the subgroup they generate, F_p^* being cyclic.
inline u64 subgroup_size(u64 p, std::span<const i64> gens)
{
	if (!is_prime(p))
		throw std::invalid_argument("subgroup_size: " + std::to_string(p) + " is not prime");
	return subgroup_size(p, factorize(p - 1), gens);
}

struct GrowthSample
{
	double y;
	u64 count; // #{p <= x : |G_p| < y}
};

struct GrowthFit
{
	std::size_t k = 0;
	std::vector<GrowthSample> samples; // y ascending
	double fitted_slope = std::numeric_limits<double>::quiet_NaN();
	u64 primes_scanned = 0;
};

/// Least-squares slope of log N against log y over the samples with N > 0.
inline double loglog_slope(std::span<const GrowthSample> samples)
{
	std::vector<std::pair<double, double>> pts;
	for (auto s : samples)
		if (s.count > 0 && s.y > 0)
			pts.emplace_back(std::log(s.y), std::log(static_cast<double>(s.count)));
	if (pts.size() < 2)
		return std::numeric_limits<double>::quiet_NaN();
	double mx = 0, my = 0;
	for (auto [a, b] : pts)
	{
		mx += a;
		my += b;
	}
	mx /= static_cast<double>(pts.size());
	my /= static_cast<double>(pts.size());
	double sxy = 0, sxx = 0;
	for (auto [a, b] : pts)
	{
		sxy += (a - mx) * (b - my);
		sxx += (a - mx) * (a - mx);
	}
	return sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

inline GrowthFit lemma42_scan(std::span<const i64> gens, u64 x, std::vector<double> y_grid, unsigned workers = 1)
{
	if (gens.empty())
		throw std::invalid_argument("lemma42_scan: needs at least one generator");
	if (x < 1000)
		throw std::invalid_argument("lemma42_scan: requires x >= 1000");
	std::vector<Rational> as_rational(gens.begin(), gens.end());
	auto verdict = mult_indep_rational(as_rational);
	if (!verdict.independent)
		throw dependent_generators(verdict.relation, verdict.relation_sign);

	PrimeTable table(x);
	std::vector<u64> ps;
	for (u64 p : table.primes())
		if (std::none_of(gens.begin(), gens.end(), [p](i64 g) { return mod_floor(g, p) == 0; }))
			ps.push_back(p);
	auto sizes = parallel_map(ps.size(), workers, [&](std::size_t i) { return subgroup_size(ps[i], factorize(ps[i] - 1), gens); });
	std::sort(sizes.begin(), sizes.end());

	GrowthFit fit;
	fit.k = gens.size();
	fit.primes_scanned = ps.size();
	std::sort(y_grid.begin(), y_grid.end());
	for (double y : y_grid)
	{
		// sizes are integers, so |G| < y  <=>  |G| < ceil(y)
		auto it = std::lower_bound(sizes.begin(), sizes.end(), y,
		                           [](u64 s, double yy) { return static_cast<double>(s) < yy; });
		fit.samples.push_back({y, static_cast<u64>(it - sizes.begin())});
	}
	fit.fitted_slope = loglog_slope(fit.samples);
	return fit;
}

// =============================================================================
// Component orders and the pigeonhole bookkeeping
// =============================================================================

struct PigeonholeRow
{
	u64 p = 0;
	u64 d_minus = 0; // gcd(p - 1, 24)
	u64 d_plus = 0;  // gcd(p + 1, 24)
	unsigned m_minus = 0; // prime factors of (p - 1)/d_minus, with multiplicity
	unsigned m_plus = 0;
	bool survivor = false;   // every such factor exceeds the threshold
	u64 attain_minus = 0;    // members with ord_N >= (p - 1)/d_minus
	u64 attain_plus = 0;     // members with ord_M >= (p + 1)/d_plus
	u64 attain_full = 0;     // members with ord >= (p^2 - 1)/24
	u64 full_only = 0;       // attain full order but miss a component; index does not divide 24
};

struct PigeonholeReport
{
	u64 x = 0;
	double delta1 = 0;
	u64 threshold = 0; // floor(x^{1/8 + delta1})
	std::vector<PigeonholeRow> rows;
	std::vector<SkippedPrime> skipped;
	u64 survivors = 0;
	unsigned max_m = 0;            // over survivors, both sides
	u64 m_violations = 0;          // survivors with m > 7
	u64 implication_violations = 0; // full order with index | 24 but a component missed; must be 0
	u64 full_only = 0;             // full order, index not dividing 24, a component missed
	u64 labelled_split = 0;        // primes with d_minus in {4,12} and d_plus in {2,6}
	u64 primes_minus = 0;          // primes with some member attaining the p-1 component
	u64 primes_plus = 0;
	u64 primes_full = 0;
};

inline PigeonholeReport pigeonhole_report(const AlphaFamily &family, std::span<const u64> primes, u64 x,
                                          double delta1 = 0.01, unsigned workers = 1, u64 seed = kDefaultSeed)
{
	PigeonholeReport rep;
	rep.x = x;
	rep.delta1 = delta1;
	rep.threshold = static_cast<u64>(std::floor(std::pow(static_cast<double>(x), 0.125 + delta1)));
	auto ps = detail::sorted_unique(primes);

	struct Out
	{
		std::optional<std::string> skip;
		PigeonholeRow row;
		u64 implication_violations = 0;
	};
	auto outs = parallel_map(ps.size(), workers, [&](std::size_t i) {
		Out o;
		u64 p = ps[i];
		o.skip = detail::scan_exclusion(family, p);
		if (o.skip)
			return o;
		auto &row = o.row;
		row.p = p;
		row.d_minus = std::gcd(p - 1, u64{24});
		row.d_plus = std::gcd(p + 1, u64{24});
		auto fm = factorize((p - 1) / row.d_minus, seed);
		auto fp = factorize((p + 1) / row.d_plus, seed);
		row.survivor = true;
		for (const auto *f : {&fm, &fp})
			for (auto [q, e] : f->factors)
				if (q <= rep.threshold)
					row.survivor = false;
		for (auto [q, e] : fm.factors)
			row.m_minus += e;
		for (auto [q, e] : fp.factors)
			row.m_plus += e;

		Fp2Context ctx(p, family.field, seed);
		for (const auto &a : family.members)
		{
			auto r = order_record(a, ctx);
			bool minus = static_cast<u128>(r.ord_N) * row.d_minus >= p - 1;
			bool plus = static_cast<u128>(r.ord_M) * row.d_plus >= p + 1;
			row.attain_minus += minus;
			row.attain_plus += plus;
			row.attain_full += r.attained;
			// index i of <a>: N has index gcd(p - 1, i) and M has index gcd(p + 1, i),
			// so i | 24 forces both components
			if (r.attained && !(minus && plus))
			{
				if (24 % r.index() == 0)
					++o.implication_violations;
				else
					++row.full_only;
			}
		}
		return o;
	});

	for (std::size_t i = 0; i < ps.size(); ++i)
	{
		auto &o = outs[i];
		if (o.skip)
		{
			rep.skipped.push_back({ps[i], *o.skip});
			continue;
		}
		const auto &row = o.row;
		rep.implication_violations += o.implication_violations;
		rep.full_only += row.full_only;
		if (row.survivor)
		{
			++rep.survivors;
			rep.max_m = std::max({rep.max_m, row.m_minus, row.m_plus});
			if (row.m_minus > 7 || row.m_plus > 7)
				++rep.m_violations;
		}
		if ((row.d_minus == 4 || row.d_minus == 12) && (row.d_plus == 2 || row.d_plus == 6))
			++rep.labelled_split;
		rep.primes_minus += row.attain_minus > 0;
		rep.primes_plus += row.attain_plus > 0;
		rep.primes_full += row.attain_full > 0;
		rep.rows.push_back(row);
	}
	return rep;
}

// =============================================================================
// Theorem hypotheses
// =============================================================================

struct GuardReport
{
	RationalIndependence norms;           // N(a_i) multiplicatively independent?
	std::vector<bool> square_guard;        // per member
	std::optional<NormOneIndependence> ratios; // M(a_i), absent when some M(a_i) = +-1
	std::vector<std::size_t> trivial_ratio;    // members with M(a) = +-1
};

inline GuardReport hypothesis_guards(const AlphaFamily &family, i64 bound = 10)
{
	GuardReport g;
	std::vector<Rational> norms;
	std::vector<QuadElem> ratios;
	for (std::size_t i = 0; i < family.size(); ++i)
	{
		const auto &a = family.members[i];
		norms.emplace_back(norm(a));
		g.square_guard.push_back(square_guard(a));
		auto m = m_ratio(a.elem());
		if (m.is_rational())
			g.trivial_ratio.push_back(i);
		else
			ratios.push_back(m);
	}
	g.norms = mult_indep_rational(norms);
	if (g.trivial_ratio.empty())
		g.ratios = mult_indep_norm_one(ratios, bound);
	return g;
}

} // namespace qartin
