#pragma once

/**
 * @file commands.hpp
 * @brief The subcommands behind the qartin executable.
 *
 * Each command reads a strict JSON config, runs the library, writes its
 * artifacts and returns a process exit code:
 *
 *   0 success, 1 unexpected error, 2 not found, 3 invariant violated,
 *   4 bad config, 5 dependent generators.
 */

#include "qartin/arith.hpp"
#include "qartin/construction.hpp"
#include "qartin/experiments.hpp"
#include "qartin/io.hpp"
#include "qartin/quadfield.hpp"
#include "qartin/rational.hpp"
#include "qartin/sieve.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qartin::cli {

using io::json;

enum ExitCode : int
{
	kOk = 0,
	kError = 1,
	kNotFound = 2,
	kInvariant = 3,
	kBadConfig = 4,
	kDependent = 5,
};

struct GlobalOptions
{
	std::optional<std::filesystem::path> out; // artifacts directory; scan and sieve default to "."
	unsigned workers = 1;
	u64 seed = kDefaultSeed;
};

inline constexpr const char *kScanCsvSchema = "scan.v1";
inline constexpr const char *kSieveCsvSchema = "sieve.v1";

/// Maps library exceptions to the exit-code contract.
template <class F>
int run_guarded(std::ostream &err, F &&body)
{
	try
	{
		return body();
	}
	catch (const dependent_generators &e)
	{
		err << "error: " << e.what() << "\n";
		return kDependent;
	}
	catch (const std::invalid_argument &e)
	{
		err << "error: " << e.what() << "\n";
		return kBadConfig;
	}
	catch (const not_found &e)
	{
		err << "not found: " << e.what() << "\n";
		return kNotFound;
	}
	catch (const invariant_violation &e)
	{
		err << "invariant violated: " << e.what() << "\n";
		return kInvariant;
	}
	catch (const std::exception &e)
	{
		err << "error: " << e.what() << "\n";
		return kError;
	}
}

/// "p" or "p/q".
inline Rational parse_rational(const std::string &s)
{
	auto slash = s.find('/');
	auto whole = [&](const std::string &t) {
		std::size_t used = 0;
		long long v = 0;
		try
		{
			v = std::stoll(t, &used);
		}
		catch (const std::exception &)
		{
			used = 0;
		}
		if (t.empty() || used != t.size())
			throw config_error("not a rational number: '" + s + "'");
		return static_cast<i64>(v);
	};
	if (slash == std::string::npos)
		return Rational(whole(s));
	i64 q = whole(s.substr(slash + 1));
	if (q == 0)
		throw config_error("zero denominator in '" + s + "'");
	return Rational(static_cast<i128>(whole(s.substr(0, slash))), static_cast<i128>(q));
}

namespace detail {
inline json counts_json(const std::map<unsigned, u64> &m)
{
	json j = json::object();
	for (auto [k, v] : m)
		j[std::to_string(k)] = v;
	return j;
}

inline std::filesystem::path out_dir(const GlobalOptions &opts) { return opts.out.value_or("."); }
} // namespace detail

// =============================================================================
// construct
// =============================================================================

struct ConstructParams
{
	i64 a = 0;
	i64 delta = 0;
	u64 bound = 10'000;  // search bound for the seed prime
	u64 verify = 100'000; // verification bound for the progression
};

inline ConstructParams construct_params(const io::Config &c)
{
	c.allow_only({"a", "delta", "bound", "verify"});
	ConstructParams p;
	p.a = c.get<i64>("a");
	p.delta = c.get<i64>("delta");
	p.bound = c.get_count_or("bound", p.bound);
	p.verify = c.get_count_or("verify", p.verify);
	return p;
}

inline json congruence_json(const Congruence &c)
{
	json res = json::object();
	for (auto [mod, r] : c.residues)
		res[std::to_string(mod)] = r;
	return {{"u", c.u},
	        {"v", c.v},
	        {"p0", c.seed.p0},
	        {"certificate", c.seed.certificate},
	        {"residues", res},
	        {"gcd_u_v", std::gcd(c.u, c.v)}};
}

inline int cmd_construct(const ConstructParams &p, const GlobalOptions &opts, std::ostream &out)
{
	auto seed = find_p0(p.a, p.delta, p.bound);
	auto c = build_congruence(p.a, p.delta, seed);
	auto rep = verify_congruence(c, p.verify, opts.workers);

	json j = congruence_json(c);
	j["a"] = p.a;
	j["delta"] = p.delta;
	j["warnings"] = seed.warnings;
	j["verified_to"] = rep.bound;
	j["checked"] = rep.checked;
	j["failures"] = json::array();
	for (const auto &f : rep.failures)
		j["failures"].push_back({{"p", f.p}, {"reason", f.reason}});
	j["v2_p_minus_1"] = detail::counts_json(rep.v2_pm1);
	j["v2_p_plus_1"] = detail::counts_json(rep.v2_pp1);

	out << j.dump(2) << "\n";
	if (opts.out)
		io::write_json(*opts.out / "construct.json", j);
	return rep.ok() ? kOk : kInvariant;
}

// =============================================================================
// scan
// =============================================================================

struct ScanParams
{
	i64 delta = 0;
	std::vector<std::pair<i64, i64>> members;
	std::vector<std::string> labels;
	u64 prime_min = 3;
	u64 prime_max = 0;
	bool use_congruence = false;
	std::optional<i64> a;  // for use_congruence; defaults to N(members[0])
	u64 p0_bound = 1'000'000;
	double delta1 = 0.01;
	i64 B = 10;
};

inline ScanParams scan_params(const io::Config &c)
{
	c.allow_only({"delta", "members", "labels", "prime_min", "prime_max", "use_congruence", "a", "p0_bound", "delta1",
	              "B"});
	ScanParams p;
	p.delta = c.get<i64>("delta");
	p.members = c.get<std::vector<std::pair<i64, i64>>>("members");
	p.labels = c.get_or<std::vector<std::string>>("labels", {});
	p.prime_min = c.get_count_or("prime_min", p.prime_min);
	p.prime_max = c.get_count("prime_max");
	p.use_congruence = c.get_or<bool>("use_congruence", false);
	if (c.has("a"))
		p.a = c.get<i64>("a");
	p.p0_bound = c.get_count_or("p0_bound", p.p0_bound);
	p.delta1 = c.get_or<double>("delta1", p.delta1);
	p.B = c.get_or<i64>("B", p.B);
	if (!(p.delta1 > 0 && p.delta1 < 0.125))
		throw config_error("scan config: delta1 must lie in (0, 1/8)");
	if (p.B < 0)
		throw config_error("scan config: B must be nonnegative");
	if (p.prime_max >= (u64{1} << 32))
		throw config_error("scan config: prime_max must be below 2^32");
	return p;
}

inline int cmd_scan(const ScanParams &p, const GlobalOptions &opts, std::ostream &out)
{
	FieldContext field(p.delta);
	std::vector<QuadInt> members;
	for (auto [x, y] : p.members)
		members.emplace_back(field, x, y);
	AlphaFamily family(field, members, p.labels);

	std::optional<Congruence> cong;
	if (p.use_congruence)
	{
		i64 a = p.a.value_or(norm(family.members[0]));
		cong = build_congruence(a, field.delta(), find_p0(a, field.delta(), p.p0_bound));
	}

	std::vector<u64> primes;
	if (p.prime_max >= 2 && p.prime_min <= p.prime_max)
	{
		PrimeTable table(p.prime_max);
		for (u64 q : table.range(p.prime_min, p.prime_max))
			if (!cong || q % cong->v == cong->u)
				primes.push_back(q);
	}

	auto scan = order_scan(family, primes, opts.workers, opts.seed);
	auto r12 = remark12_check(scan);
	auto guards = hypothesis_guards(family, p.B);
	auto ph = pigeonhole_report(family, primes, std::max<u64>(p.prime_max, 2), p.delta1, opts.workers, opts.seed);

	std::string csv = "p,member,label,ord_alpha,ord_N,ord_M,attained\n";
	for (const auto &r : scan.records)
		csv += fmt::format("{},{},{},{},{},{},{}\n", r.rec.p, r.member, io::csv_field(family.labels[r.member]),
		                   r.rec.ord_alpha, r.rec.ord_N, r.rec.ord_M, r.rec.attained ? 1 : 0);

	const auto &s = scan.summary;
	json members_json = json::array();
	for (std::size_t i = 0; i < family.size(); ++i)
		members_json.push_back({{"label", family.labels[i]},
		                        {"x", family.members[i].x},
		                        {"y", family.members[i].y},
		                        {"norm", norm(family.members[i])},
		                        {"attained", s.member_attained[i]},
		                        {"fraction", s.fraction(s.member_attained[i])}});
	json profile = json::array(); // [index, records], index ascending
	for (auto [idx, n] : s.divisor_profile)
		profile.push_back({idx, n});
	std::map<std::string, u64> skip_reasons;
	for (const auto &sk : scan.skipped)
		++skip_reasons[sk.reason];

	json g = {{"norms_independent", guards.norms.independent},
	          {"norms_rank", guards.norms.rank},
	          {"norms_relation", guards.norms.relation},
	          {"square_guard", guards.square_guard},
	          {"trivial_ratio_members", guards.trivial_ratio}};
	if (guards.ratios)
		g["ratios"] = {{"independent_up_to", guards.ratios->relation_found ? json(nullptr) : json(guards.ratios->bound)},
		               {"bound", guards.ratios->bound},
		               {"relation", guards.ratios->relation},
		               {"screened", guards.ratios->screened},
		               {"exact_checks", guards.ratios->exact_checks},
		               {"overflowed", guards.ratios->overflowed}};
	else
		g["ratios"] = nullptr;

	json summary = {
	    {"schema", "scan_summary.v1"},
	    {"csv_schema", kScanCsvSchema},
	    {"delta", field.delta()},
	    {"field_warnings", field.warnings()},
	    {"prime_min", p.prime_min},
	    {"prime_max", p.prime_max},
	    {"prime_count", s.prime_count},
	    {"skipped", scan.skipped.size()},
	    {"skipped_reasons", skip_reasons},
	    {"members", members_json},
	    {"attainment_family", s.family_attained},
	    {"attainment_family_fraction", s.fraction(s.family_attained)},
	    {"divisor_profile", profile},
	    {"remark12_violations", r12.violations.size()},
	    {"guards", g},
	    {"pigeonhole",
	     {{"x", ph.x},
	      {"delta1", ph.delta1},
	      {"threshold", ph.threshold},
	      {"survivors", ph.survivors},
	      {"max_m", ph.max_m},
	      {"m_violations", ph.m_violations},
	      {"implication_violations", ph.implication_violations},
	      {"full_only", ph.full_only},
	      {"labelled_split", ph.labelled_split},
	      {"primes_minus", ph.primes_minus},
	      {"primes_plus", ph.primes_plus},
	      {"primes_full", ph.primes_full}}},
	};
	summary["congruence"] = cong ? congruence_json(*cong) : json(nullptr);

	auto dir = detail::out_dir(opts);
	io::write_text(dir / "scan.csv", csv);
	io::write_json(dir / "scan_summary.json", summary);
	out << "scanned " << s.prime_count << " primes, family attainment " << s.family_attained << ", remark12 violations "
	    << r12.violations.size() << "\n";
	for (const auto &v : r12.violations)
		out << "  p = " << v.p << ", member " << family.labels[v.member] << ": " << v.what << "\n";
	return r12.ok() && ph.implication_violations == 0 ? kOk : kInvariant;
}

// =============================================================================
// sieve
// =============================================================================

struct SieveParams
{
	SieveConfig cfg;
	std::optional<std::pair<i64, i64>> a_delta; // progression from the construction
	u64 p0_bound = 1'000'000;
	u64 d_min = 1;
	u64 d_max = 100;
	u64 mertens_w = 100;
};

inline SieveParams sieve_params(const io::Config &c)
{
	c.allow_only({"x", "u", "v", "a", "delta", "p0_bound", "z", "delta1", "d_min", "d_max", "A", "c2", "c3",
	              "mertens_w"});
	SieveParams p;
	auto &cfg = p.cfg;
	cfg.x = c.get_count("x");
	bool uv = c.has("u") || c.has("v"), ad = c.has("a") || c.has("delta");
	if (uv == ad)
		throw config_error("sieve config: give exactly one of (u, v) or (a, delta)");
	if (uv)
	{
		cfg.u = c.get_count("u");
		cfg.v = c.get_count("v");
	}
	else
		p.a_delta = std::pair{c.get<i64>("a"), c.get<i64>("delta")};
	p.p0_bound = c.get_count_or("p0_bound", p.p0_bound);
	cfg.delta1 = c.get_or<double>("delta1", cfg.delta1);
	if (c.has("z"))
		cfg.z = c.get_count("z");
	else if (cfg.delta1 > 0 && cfg.delta1 < 0.125)
		cfg.z = std::max<u64>(2, static_cast<u64>(std::floor(std::pow(static_cast<double>(cfg.x), 0.125 + cfg.delta1))));
	cfg.A = c.get_or<double>("A", cfg.A);
	cfg.c2 = c.get_or<double>("c2", cfg.c2);
	cfg.c3 = c.get_or<double>("c3", cfg.c3);
	p.d_min = c.get_count_or("d_min", p.d_min);
	p.d_max = c.get_count_or("d_max", p.d_max);
	p.mertens_w = c.get_count_or("mertens_w", p.mertens_w);
	if (p.d_min > p.d_max)
		throw config_error("sieve config: d_min exceeds d_max");
	if (p.mertens_w < 2 || p.mertens_w > cfg.x)
		throw config_error("sieve config: need 2 <= mertens_w <= x");
	return p;
}

inline int cmd_sieve(SieveParams p, const GlobalOptions &opts, std::ostream &out)
{
	json cong = nullptr;
	if (p.a_delta)
	{
		auto [a, delta] = *p.a_delta;
		auto c = build_congruence(a, delta, find_p0(a, delta, p.p0_bound));
		p.cfg.u = c.u;
		p.cfg.v = c.v;
		cong = congruence_json(c);
	}
	p.cfg.validate();
	SieveContext ctx(p.cfg);
	const auto &cfg = ctx.config();

	auto rows = sieve_rows(ctx, p.d_min, p.d_max);
	std::string csv = "d,rho,Ad,main,Rd\n";
	for (const auto &r : rows)
		csv += fmt::format("{},{},{},{},{}\n", r.d, r.rho, r.Ad, io::num(r.main), io::num(r.Rd));

	auto bound = sieve_bound_report(ctx);
	auto rem = remainder_sum(ctx);
	json pl = nullptr;
	if (cfg.z > 3)
	{
		auto r = product_lower(ctx.table(), cfg.z, cfg.v);
		pl = {{"z", cfg.z}, {"product", r.product}, {"comparator", r.comparator}, {"ratio", r.ratio}};
	}

	json report = {
	    {"schema", "sieve_report.v1"},
	    {"csv_schema", kSieveCsvSchema},
	    {"x", cfg.x},
	    {"u", cfg.u},
	    {"v", cfg.v},
	    {"z", cfg.z},
	    {"delta1", cfg.delta1},
	    {"congruence", cong},
	    {"X", ctx.X()},
	    {"phi_v", ctx.phi_v()},
	    {"progression_count", ctx.progression().size()},
	    {"rows", rows.size()},
	    {"survivors",
	     {{"count", bound.survivors},
	      {"main_product", bound.main_product},
	      {"sieve_argument", bound.sieve_argument},
	      {"threshold", bound.threshold},
	      {"beyond_threshold", bound.beyond_threshold},
	      {"argument_at_delta1", bound.argument_at_delta1},
	      {"z_at_delta1", bound.z_at_delta1},
	      {"fitted_c", bound.fitted_c}}},
	    {"mertens", {{"w", p.mertens_w}, {"z", cfg.x}, {"value", mertens_check(ctx.table(), p.mertens_w, cfg.x)}}},
	    {"product_lower", pl},
	    {"remainder_sum",
	     {{"sum", rem.sum},
	      {"d_limit", rem.d_limit},
	      {"terms", rem.terms},
	      {"comparator", rem.comparator},
	      {"ratio", rem.ratio},
	      {"A", cfg.A},
	      {"c2", cfg.c2},
	      {"c3", cfg.c3},
	      {"max_error_x_v", max_error(ctx.table(), cfg.x, cfg.v)},
	      {"note", "R_d uses the exact count in the single class u mod v; max_error_x_v is the maximum of "
	               "|pi(y; v, s) - Li(y)/phi(v)| over residues s at y = x, for comparison"}}},
	};

	auto dir = detail::out_dir(opts);
	io::write_text(dir / "sieve.csv", csv);
	io::write_json(dir / "sieve_report.json", report);
	out << "sieve: " << ctx.progression().size() << " primes in " << cfg.u << " mod " << cfg.v << ", " << rows.size()
	    << " rows, " << bound.survivors << " survivors at z = " << cfg.z << "\n";
	return kOk;
}

// =============================================================================
// lemma42
// =============================================================================

struct Lemma42Params
{
	std::vector<i64> gens;
	u64 x = 100'000;
	std::vector<double> grid;
};

/// 13 points 10^(1 + i/4), spanning [10, 10^4].
inline std::vector<double> default_growth_grid()
{
	std::vector<double> g;
	for (int i = 0; i <= 12; ++i)
		g.push_back(std::pow(10.0, 1 + 0.25 * i));
	return g;
}

inline Lemma42Params lemma42_params(const io::Config &c)
{
	c.allow_only({"gens", "x", "grid"});
	Lemma42Params p;
	p.gens = c.get<std::vector<i64>>("gens");
	p.x = c.get_count_or("x", p.x);
	p.grid = c.has("grid") ? c.get<std::vector<double>>("grid") : default_growth_grid();
	return p;
}

inline int cmd_lemma42(const Lemma42Params &p, const GlobalOptions &opts, std::ostream &out)
{
	try
	{
		auto fit = lemma42_scan(p.gens, p.x, p.grid, opts.workers);
		json samples = json::array();
		for (auto s : fit.samples)
			samples.push_back({{"y", s.y}, {"count", s.count}});
		json j = {{"gens", p.gens},
		          {"k", fit.k},
		          {"x", p.x},
		          {"primes_scanned", fit.primes_scanned},
		          {"samples", samples},
		          {"fitted_slope", std::isfinite(fit.fitted_slope) ? json(fit.fitted_slope) : json(nullptr)},
		          {"reference_exponent", 1.0 + 1.0 / static_cast<double>(fit.k)}};
		out << j.dump(2) << "\n";
		if (opts.out)
			io::write_json(*opts.out / "lemma42.json", j);
		return kOk;
	}
	catch (const dependent_generators &e)
	{
		json j = {{"gens", p.gens}, {"dependent", true}, {"relation", e.relation}, {"relation_sign", e.relation_sign}};
		out << j.dump(2) << "\n";
		return kDependent;
	}
}

// =============================================================================
// independence
// =============================================================================

struct IndependenceParams
{
	std::vector<std::string> values; // rational mode
	std::optional<i64> delta;        // family mode
	std::vector<std::pair<i64, i64>> members;
	i64 B = 10;
};

inline IndependenceParams independence_params(const io::Config &c)
{
	c.allow_only({"values", "delta", "members", "B"});
	IndependenceParams p;
	if (c.has("values") == c.has("delta"))
		throw config_error("independence: give exactly one of 'values' or 'delta' + 'members'");
	if (c.has("values"))
	{
		const auto &v = c.raw().at("values");
		if (!v.is_array())
			throw config_error("independence: 'values' must be an array");
		for (const auto &e : v)
			p.values.push_back(e.is_string() ? e.get<std::string>() : e.dump());
	}
	else
	{
		p.delta = c.get<i64>("delta");
		p.members = c.get<std::vector<std::pair<i64, i64>>>("members");
	}
	p.B = c.get_or<i64>("B", p.B);
	if (p.B < 0)
		throw config_error("independence: B must be nonnegative");
	return p;
}

inline int cmd_independence(const IndependenceParams &p, const GlobalOptions &opts, std::ostream &out)
{
	json j;
	bool dependent = false;
	if (!p.values.empty())
	{
		std::vector<Rational> vals;
		for (const auto &s : p.values)
			vals.push_back(parse_rational(s));
		auto v = mult_indep_rational(vals);
		dependent = !v.independent;
		j = {{"values", p.values},
		     {"independent", v.independent},
		     {"rank", v.rank},
		     {"relation", v.relation},
		     {"relation_sign", v.relation_sign}};
	}
	else
	{
		FieldContext field(*p.delta);
		std::vector<QuadInt> members;
		for (auto [x, y] : p.members)
			members.emplace_back(field, x, y);
		AlphaFamily family(field, members);
		auto g = hypothesis_guards(family, p.B);
		dependent = !g.norms.independent || !g.trivial_ratio.empty() || (g.ratios && g.ratios->relation_found);
		j = {{"delta", field.delta()},
		     {"members", p.members},
		     {"norms_independent", g.norms.independent},
		     {"norms_relation", g.norms.relation},
		     {"square_guard", g.square_guard},
		     {"trivial_ratio_members", g.trivial_ratio}};
		if (g.ratios)
			j["ratios"] = {{"relation_found", g.ratios->relation_found},
			               {"relation", g.ratios->relation},
			               {"bound", g.ratios->bound},
			               {"screened", g.ratios->screened},
			               {"exact_checks", g.ratios->exact_checks},
			               {"overflowed", g.ratios->overflowed}};
		else
			j["ratios"] = nullptr;
	}
	out << j.dump(2) << "\n";
	if (opts.out)
		io::write_json(*opts.out / "independence.json", j);
	return dependent ? kDependent : kOk;
}

} // namespace qartin::cli
