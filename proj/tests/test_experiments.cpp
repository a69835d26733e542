#include "qartin/experiments.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qartin;

namespace {

AlphaFamily delta5_family()
{
	FieldContext f(5);
	return AlphaFamily(f, {QuadInt(f, 2, 1), QuadInt(f, 1, 1), QuadInt(f, 3, 2)});
}

std::vector<u64> primes_upto(u64 n)
{
	PrimeTable t(n);
	return {t.primes().begin(), t.primes().end()};
}

Rational pow_rational(Rational r, i64 e)
{
	Rational out(1);
	for (i64 i = 0; i < e; ++i)
		out *= r;
	return out;
}

/// Brute-force search for a nonzero e in [-b, b]^k with prod v_i^e_i = +-1.
bool brute_relation(const std::vector<Rational> &v, i64 b)
{
	const std::size_t k = v.size();
	std::vector<i64> e(k, -b);
	while (true)
	{
		bool nonzero = std::any_of(e.begin(), e.end(), [](i64 x) { return x != 0; });
		if (nonzero)
		{
			Rational prod(1);
			for (std::size_t i = 0; i < k; ++i)
				prod *= e[i] >= 0 ? pow_rational(v[i], e[i]) : pow_rational(v[i].reciprocal(), -e[i]);
			if (prod == Rational(1) || prod == Rational(-1))
				return true;
		}
		std::size_t i = 0;
		while (i < k && e[i] == b)
			e[i++] = -b;
		if (i == k)
			return false;
		++e[i];
	}
}

} // namespace

TEST(AlphaFamily, Validation)
{
	FieldContext f(5);
	EXPECT_THROW(AlphaFamily(f, {}), std::invalid_argument);
	EXPECT_THROW(AlphaFamily(f, {QuadInt(f, 0, 0)}), std::invalid_argument);
	EXPECT_THROW(AlphaFamily(f, {QuadInt(FieldContext(2), 1, 1)}), std::invalid_argument);
	EXPECT_THROW(AlphaFamily(f, {QuadInt(f, 1, 1)}, {"a", "b"}), std::invalid_argument);
	EXPECT_EQ(delta5_family().labels.size(), 3u);
}

TEST(OrderScan, FrozenBaselineTo1e4)
{
	auto ps = primes_upto(10'000);
	auto scan = order_scan(delta5_family(), ps);
	const auto &s = scan.summary;
	EXPECT_EQ(s.prime_count, 618u);
	EXPECT_EQ(s.member_attained, (std::vector<u64>{6, 552, 575}));
	EXPECT_EQ(s.family_attained, 610u);
	EXPECT_EQ(s.remark12_violations, 0u);
	EXPECT_EQ(scan.records.size(), 3 * s.prime_count);
	EXPECT_EQ(scan.skipped.size() + s.prime_count, ps.size());
}

TEST(OrderScan, SummaryRecomputableFromRecords)
{
	auto scan = order_scan(delta5_family(), primes_upto(5'000), 3);
	std::map<u64, bool> any;
	std::vector<u64> per(3, 0);
	u64 profile_total = 0;
	for (const auto &r : scan.records)
	{
		any[r.rec.p] = any[r.rec.p] || r.rec.attained;
		per[r.member] += r.rec.attained;
		ASSERT_EQ(r.rec.attained, attains_threshold(r.rec.ord_alpha, r.rec.p));
	}
	for (auto [idx, n] : scan.summary.divisor_profile)
		profile_total += n;
	u64 fam = 0;
	for (auto [p, a] : any)
		fam += a;
	EXPECT_EQ(fam, scan.summary.family_attained);
	EXPECT_EQ(per, scan.summary.member_attained);
	EXPECT_EQ(profile_total, scan.records.size());
	EXPECT_GE(scan.summary.family_attained, *std::max_element(per.begin(), per.end()));
	EXPECT_LE(scan.summary.family_attained, scan.summary.prime_count);
}

TEST(OrderScan, SkipReasons)
{
	auto scan = order_scan(delta5_family(), std::vector<u64>{2, 3, 5, 11, 15, 7, 7});
	std::map<u64, std::string> why;
	for (auto &s : scan.skipped)
		why[s.p] = s.reason;
	EXPECT_EQ(why[2], "p = 2");
	EXPECT_EQ(why[5], "ramified");
	EXPECT_EQ(why[11], "split");
	EXPECT_EQ(why[15], "not prime");
	EXPECT_EQ(scan.summary.prime_count, 2u); // 3 and 7, deduplicated
	// N(3) = 9, so p = 3 divides the norm
	FieldContext f(5);
	AlphaFamily g(f, {QuadInt(f, 3, 0)});
	auto s2 = order_scan(g, std::vector<u64>{3, 7});
	ASSERT_EQ(s2.skipped.size(), 1u);
	EXPECT_EQ(s2.skipped[0].reason, "divides N(3+0*sqrt(5))");
}

TEST(OrderScan, RationalOneNeverAttainsBeyond5)
{
	FieldContext f(5);
	auto scan = order_scan(AlphaFamily(f, {QuadInt(f, 1, 0)}), primes_upto(2'000));
	for (const auto &r : scan.records)
	{
		ASSERT_EQ(r.rec.ord_alpha, 1u);
		ASSERT_EQ(r.rec.attained, r.rec.p <= 5) << r.rec.p; // 24 >= p^2 - 1 only for p <= 5
	}
}

TEST(OrderScan, WorkerCountDoesNotChangeOutput)
{
	auto ps = primes_upto(3'000);
	auto a = order_scan(delta5_family(), ps, 1);
	auto b = order_scan(delta5_family(), ps, 4);
	ASSERT_EQ(a.records.size(), b.records.size());
	for (std::size_t i = 0; i < a.records.size(); ++i)
	{
		ASSERT_EQ(a.records[i].rec.p, b.records[i].rec.p);
		ASSERT_EQ(a.records[i].rec.ord_alpha, b.records[i].rec.ord_alpha);
	}
}

TEST(Remark12, RandomElementsDelta5)
{
	std::mt19937_64 rng(29);
	FieldContext f(5);
	std::vector<QuadInt> members;
	while (members.size() < 50)
	{
		QuadInt a(f, static_cast<i64>(rng() % 401) - 200, static_cast<i64>(rng() % 401) - 200);
		if (norm(a) != 0)
			members.push_back(a);
	}
	members.push_back(QuadInt(f, 0, 1)); // sqrt 5
	members.push_back(QuadInt(f, 7, 0)); // rational
	AlphaFamily fam(f, members);
	auto rep = remark12_verify(fam, primes_upto(10'000), 2);
	EXPECT_TRUE(rep.ok()) << rep.violations.size();
	EXPECT_GT(rep.records, 0u);
}

TEST(Remark12, ViolationDetection)
{
	OrderRecord bad{7, 6, 4, 8, false};
	EXPECT_TRUE(remark12_violation(bad).has_value());
	OrderRecord good{7, 16, 2, 8, true};
	EXPECT_FALSE(remark12_violation(good).has_value());
}

TEST(MultIndepRational, Examples)
{
	auto v = mult_indep_rational(std::vector<Rational>{2, 3});
	EXPECT_TRUE(v.independent);
	auto d = mult_indep_rational(std::vector<Rational>{2, 4});
	EXPECT_FALSE(d.independent);
	EXPECT_EQ(d.relation, (std::vector<i64>{2, -1}));
	auto t = mult_indep_rational(std::vector<Rational>{6, 10, 15});
	EXPECT_TRUE(t.independent);
	EXPECT_EQ(t.rank, 3u);
	EXPECT_FALSE(brute_relation({6, 10, 15}, 5));
	auto s = mult_indep_rational(std::vector<Rational>{-1});
	EXPECT_FALSE(s.independent);
	EXPECT_EQ(s.relation, (std::vector<i64>{1}));
	EXPECT_EQ(s.relation_sign, -1);
	auto q = mult_indep_rational(std::vector<Rational>{Rational(static_cast<i128>(2), static_cast<i128>(3)), 6, 9});
	EXPECT_FALSE(q.independent); // (2/3) * 9 = 6
	EXPECT_THROW(mult_indep_rational(std::vector<Rational>{0}), std::invalid_argument);
}

TEST(MultIndepRational, AgreesWithBruteForce)
{
	std::mt19937_64 rng(31);
	const i64 pool[] = {-12, -6, -4, -3, -2, -1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18, 25, 27, 30};
	for (int it = 0; it < 100; ++it)
	{
		std::size_t k = 1 + rng() % 4;
		std::vector<Rational> v;
		for (std::size_t i = 0; i < k; ++i)
		{
			i64 n = pool[rng() % std::size(pool)], d = pool[rng() % std::size(pool)];
			v.push_back(Rational(static_cast<i128>(n), static_cast<i128>(d < 0 ? -d : d)));
		}
		auto verdict = mult_indep_rational(v);
		// a small relation forces dependence; larger ones are checked exactly below
		if (brute_relation(v, 3))
		{
			ASSERT_FALSE(verdict.independent) << it;
		}
		if (!verdict.independent)
		{
			Rational prod(1);
			for (std::size_t i = 0; i < k; ++i)
				prod *= verdict.relation[i] >= 0 ? pow_rational(v[i], verdict.relation[i])
				                                 : pow_rational(v[i].reciprocal(), -verdict.relation[i]);
			ASSERT_EQ(prod, Rational(verdict.relation_sign));
		}
	}
}

TEST(MultIndepNormOne, Examples)
{
	FieldContext f(5);
	auto m = m_ratio(QuadInt(f, 2, 1).elem());
	auto mc = m_ratio(conjugate(QuadInt(f, 2, 1)).elem());
	auto r = mult_indep_norm_one(std::vector<QuadElem>{m, mc});
	ASSERT_TRUE(r.relation_found);
	EXPECT_EQ(r.relation, (std::vector<i64>{1, 1}));

	auto single = mult_indep_norm_one(std::vector<QuadElem>{m});
	EXPECT_FALSE(single.relation_found);
	EXPECT_EQ(single.bound, 10);

	auto sq = mult_indep_norm_one(std::vector<QuadElem>{m, m * m});
	ASSERT_TRUE(sq.relation_found);
	EXPECT_EQ(sq.relation, (std::vector<i64>{2, -1}));

	EXPECT_THROW(mult_indep_norm_one(std::vector<QuadElem>{QuadInt(f, 2, 1).elem()}), std::invalid_argument);
	EXPECT_THROW(mult_indep_norm_one(std::vector<QuadElem>{m.make(Rational(-1))}), std::invalid_argument);
}

TEST(MultIndepNormOne, BudgetLowersTheBound)
{
	FieldContext f(5);
	std::vector<QuadElem> v;
	for (auto [x, y] : std::vector<std::pair<i64, i64>>{{2, 1}, {1, 1}, {3, 2}, {4, 1}, {5, 2}})
		v.push_back(m_ratio(QuadInt(f, x, y).elem()));
	auto r = mult_indep_norm_one(v, 10, 100'000);
	EXPECT_LT(r.bound, 10);
	EXPECT_LE(std::pow(2.0 * static_cast<double>(r.bound) + 1, 5.0), 100'000.0);
}

TEST(MultIndepNormOne, FindsRelationAmongUnitPowers)
{
	// M(2+sqrt5) = -(2-sqrt5)^2 and 2+sqrt5 = phi^3, so M(2+sqrt5) and M(phi^6) satisfy e = (2, -1)
	FieldContext f(5);
	auto a = QuadInt(f, 2, 1).elem();
	auto r = mult_indep_norm_one(std::vector<QuadElem>{m_ratio(a), m_ratio(pow(a, 2))});
	ASSERT_TRUE(r.relation_found);
	EXPECT_EQ(r.relation, (std::vector<i64>{2, -1}));
}

TEST(SubgroupSize, Examples)
{
	EXPECT_EQ(subgroup_size(7, std::vector<i64>{2, 3}), 6u);
	EXPECT_EQ(subgroup_size(7, std::vector<i64>{1}), 1u);
	EXPECT_EQ(subgroup_size(7, std::vector<i64>{2}), 3u);
	EXPECT_THROW(subgroup_size(7, std::vector<i64>{14}), std::invalid_argument);
	EXPECT_THROW(subgroup_size(8, std::vector<i64>{3}), std::invalid_argument);
}

TEST(SubgroupSize, MatchesClosureBelow200)
{
	std::mt19937_64 rng(37);
	const PrimeTable primes_p(200);
	for (u64 p : primes_p.range(3, 200))
		for (int it = 0; it < 20; ++it)
		{
			std::vector<i64> gens{static_cast<i64>(rng() % (p - 1)) + 1, -static_cast<i64>(rng() % (p - 1)) - 1};
			std::set<u64> closure{1};
			bool grew = true;
			while (grew)
			{
				grew = false;
				for (u64 x : std::vector<u64>(closure.begin(), closure.end()))
					for (i64 g : gens)
						grew |= closure.insert(mulmod(x, mod_floor(g, p), p)).second;
			}
			u64 size = subgroup_size(p, gens);
			ASSERT_EQ(size, closure.size()) << p;
			ASSERT_EQ((p - 1) % size, 0u);
		}
}

TEST(Lemma42, FrozenCountsAndSlope)
{
	std::vector<double> grid;
	for (int i = 12; i >= 0; --i) // deliberately reversed
		grid.push_back(std::pow(10.0, 1 + 0.25 * i));
	auto fit = lemma42_scan(std::vector<i64>{2, 3}, 1'000'000, grid, 2);
	std::vector<u64> counts;
	for (auto s : fit.samples)
		counts.push_back(s.count);
	EXPECT_EQ(counts, (std::vector<u64>{2, 6, 10, 18, 28, 53, 84, 136, 238, 401, 660, 1104, 1855}));
	EXPECT_TRUE(std::is_sorted(fit.samples.begin(), fit.samples.end(),
	                           [](auto a, auto b) { return a.y < b.y; }));
	EXPECT_NEAR(fit.fitted_slope, 0.9388541727403583, 1e-9);
	EXPECT_EQ(fit.k, 2u);
}

TEST(Lemma42, SaturationAndEdgeCases)
{
	auto fit = lemma42_scan(std::vector<i64>{2, 3}, 2'000, std::vector<double>{1, 0.5, 5'000});
	EXPECT_EQ(fit.samples[0].count, 0u);
	EXPECT_EQ(fit.samples[1].count, 0u);
	EXPECT_EQ(fit.samples[2].count, fit.primes_scanned);
	EXPECT_EQ(fit.primes_scanned, PrimeTable(2'000).primes().size() - 2);
	EXPECT_THROW(lemma42_scan(std::vector<i64>{2, 3}, 999, {10.0}), std::invalid_argument);
	try
	{
		lemma42_scan(std::vector<i64>{2, 4}, 10'000, {10.0});
		FAIL();
	}
	catch (const dependent_generators &e)
	{
		EXPECT_EQ(e.relation, (std::vector<i64>{2, -1}));
	}
}

TEST(Loglog, SlopeOfPowerLaw)
{
	std::vector<GrowthSample> s;
	for (double y = 10; y < 1e5; y *= 3)
		s.push_back({y, static_cast<u64>(std::llround(y * y))});
	EXPECT_NEAR(loglog_slope(s), 2.0, 1e-3);
	EXPECT_TRUE(std::isnan(loglog_slope(std::vector<GrowthSample>{{10, 0}, {100, 5}})));
}

TEST(Pigeonhole, ReportInvariants)
{
	auto fam = delta5_family();
	auto ps = primes_upto(20'000);
	auto rep = pigeonhole_report(fam, ps, 20'000, 0.01, 2);
	EXPECT_EQ(rep.threshold, static_cast<u64>(std::floor(std::pow(20'000.0, 0.135))));
	EXPECT_EQ(rep.implication_violations, 0u);
	EXPECT_EQ(rep.m_violations, 0u);
	EXPECT_LE(rep.max_m, 7u);
	u64 full = 0, minus = 0, plus = 0;
	for (const auto &row : rep.rows)
	{
		ASSERT_EQ(row.d_minus, std::gcd(row.p - 1, u64{24}));
		ASSERT_EQ(row.d_plus, std::gcd(row.p + 1, u64{24}));
		if (row.p % 3 == 1)
		{
			ASSERT_EQ(row.d_minus % 3, 0u);
		}
		full += row.attain_full;
		minus += row.attain_minus;
		plus += row.attain_plus;
		ASSERT_LE(row.attain_full - row.full_only, std::min(row.attain_minus, row.attain_plus));
	}
	EXPECT_GE(minus + rep.full_only, full);
	EXPECT_GE(plus + rep.full_only, full);
	EXPECT_EQ(rep.rows.size() + rep.skipped.size(), ps.size());
}

TEST(Guards, Delta5Family)
{
	auto g = hypothesis_guards(delta5_family());
	// norms -1, -4, -11: (-1)^2 = 1 is a relation
	EXPECT_FALSE(g.norms.independent);
	EXPECT_EQ(g.square_guard, (std::vector<bool>{true, true, true}));
	ASSERT_TRUE(g.ratios.has_value());
	// M(1+sqrt5) = M(phi) and M(2+sqrt5) = M(phi^3) = M(phi)^3
	EXPECT_TRUE(g.ratios->relation_found);

	FieldContext f(5);
	auto h = hypothesis_guards(AlphaFamily(f, {QuadInt(f, 3, 0), QuadInt(f, 2, 1)}));
	EXPECT_EQ(h.trivial_ratio, (std::vector<std::size_t>{0}));
	EXPECT_FALSE(h.ratios.has_value());
}
