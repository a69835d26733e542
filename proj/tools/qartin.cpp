// qartin: progressions of inert primes, order scans and sieve tables.
//
// Every subcommand accepts --config FILE; flags given on the command line
// override the same keys in the file.

#include "qartin/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using qartin::io::json;

template <class T>
void put(json &j, const char *key, const std::optional<T> &v)
{
	if (v)
		j[key] = *v;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"qartin: order attainment in quadratic fields and the sieve behind it"};
	app.require_subcommand(1);

	std::optional<std::string> config_path;
	std::optional<std::string> out_dir;
	unsigned workers = 1;
	std::uint64_t seed = qartin::kDefaultSeed;
	app.add_option("--config", config_path, "JSON config file");
	app.add_option("--out", out_dir, "directory for output artifacts");
	app.add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
	app.add_option("--seed", seed, "seed for randomized factorization");

	// construct
	auto *construct = app.add_subcommand("construct", "build the progression u (mod v) for (a, delta) and verify it");
	std::optional<std::int64_t> c_a, c_delta;
	std::optional<std::uint64_t> c_bound, c_verify;
	construct->add_option("--a", c_a, "integer a that must be a non-residue");
	construct->add_option("--delta", c_delta, "field discriminant parameter");
	construct->add_option("--bound", c_bound, "search bound for the seed prime (default 10000)");
	construct->add_option("--verify", c_verify, "verify primes up to this bound (default 100000)");

	// scan
	auto *scan = app.add_subcommand("scan", "order-attainment scan over inert primes (needs --config)");
	std::optional<std::uint64_t> s_min, s_max;
	scan->add_option("--prime-min", s_min, "override prime_min");
	scan->add_option("--prime-max", s_max, "override prime_max");

	// sieve
	auto *sieve = app.add_subcommand("sieve", "sieve tables for p^2 - 1 over a progression");
	std::optional<std::uint64_t> v_x, v_z, v_dmin, v_dmax;
	sieve->add_option("--x", v_x, "upper bound for primes");
	sieve->add_option("--z", v_z, "sifting limit");
	sieve->add_option("--d-min", v_dmin, "smallest d in the table");
	sieve->add_option("--d-max", v_dmax, "largest d in the table");

	// lemma42
	auto *lemma42 = app.add_subcommand("lemma42", "growth of #{p : |<gens> mod p| < y}");
	std::optional<std::string> l_gens;
	std::optional<std::uint64_t> l_x;
	std::optional<std::vector<double>> l_grid;
	lemma42->add_option("--gens", l_gens, "comma-separated generators, e.g. 2,3");
	lemma42->add_option("--x", l_x, "prime bound (default 100000)");
	lemma42->add_option("--grid", l_grid, "y values (default 13 points in [10, 10^4])")->delimiter(',');

	// independence
	auto *indep = app.add_subcommand("independence", "multiplicative independence checks");
	std::optional<std::vector<std::string>> i_values;
	std::optional<std::int64_t> i_delta;
	std::optional<std::int64_t> i_B;
	indep->add_option("--values", i_values, "rationals such as 2,4,3/5")->delimiter(',');
	indep->add_option("--delta", i_delta, "field for --config members");
	indep->add_option("--B", i_B, "exponent bound for norm-one search (default 10)");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int rc = app.exit(e);
		return rc == 0 ? 0 : qartin::cli::kBadConfig;
	}

	qartin::cli::GlobalOptions opts;
	if (out_dir)
		opts.out = *out_dir;
	opts.workers = workers;
	opts.seed = seed;

	return qartin::cli::run_guarded(std::cerr, [&]() -> int {
		json j = config_path ? qartin::io::read_json_file(*config_path) : json::object();
		std::string where = config_path ? *config_path : "command line";
		if (!j.is_object())
			throw qartin::config_error(where + ": config must be a JSON object");
		using namespace qartin::cli;

		if (*construct)
		{
			put(j, "a", c_a);
			put(j, "delta", c_delta);
			put(j, "bound", c_bound);
			put(j, "verify", c_verify);
			return cmd_construct(construct_params({j, where}), opts, std::cout);
		}
		if (*scan)
		{
			put(j, "prime_min", s_min);
			put(j, "prime_max", s_max);
			return cmd_scan(scan_params({j, where}), opts, std::cout);
		}
		if (*sieve)
		{
			put(j, "x", v_x);
			put(j, "z", v_z);
			put(j, "d_min", v_dmin);
			put(j, "d_max", v_dmax);
			return cmd_sieve(sieve_params({j, where}), opts, std::cout);
		}
		if (*lemma42)
		{
			if (l_gens)
				j["gens"] = qartin::io::parse_int_list(*l_gens);
			put(j, "x", l_x);
			put(j, "grid", l_grid);
			return cmd_lemma42(lemma42_params({j, where}), opts, std::cout);
		}
		put(j, "values", i_values);
		put(j, "delta", i_delta);
		put(j, "B", i_B);
		return cmd_independence(independence_params({j, where}), opts, std::cout);
	});
}
