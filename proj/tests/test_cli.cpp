#include "qartin/commands.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using qartin::io::json;

namespace {

fs::path scratch(const std::string &name)
{
	auto dir = fs::temp_directory_path() / ("qartin_cli_" + std::to_string(::getpid())) / name;
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

int run(const std::string &args, const fs::path &stdout_file)
{
	std::string cmd = std::string(QARTIN_BINARY) + " " + args + " > " + stdout_file.string() + " 2>&1";
	int status = std::system(cmd.c_str());
	return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p)
{
	std::ifstream in(p, std::ios::binary);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

fs::path write_config(const fs::path &dir, const std::string &name, const json &j)
{
	auto p = dir / name;
	std::ofstream(p) << j.dump();
	return p;
}

} // namespace

TEST(Cli, ConstructSuccessAndReadableJson)
{
	auto dir = scratch("construct");
	ASSERT_EQ(run("construct --a -4 --delta 5 --bound 10000", dir / "out.txt"), 0);
	auto j = json::parse(slurp(dir / "out.txt"));
	EXPECT_EQ(j["u"], 43);
	EXPECT_EQ(j["v"], 720);
	EXPECT_EQ(j["p0"], 43);
	EXPECT_EQ(std::gcd(j["u"].get<std::uint64_t>(), j["v"].get<std::uint64_t>()), 1u);
	EXPECT_TRUE(j["failures"].empty());
	EXPECT_EQ(j["u"].get<std::uint64_t>() % 16, j["residues"]["16"].get<std::uint64_t>());
	EXPECT_EQ(j["u"].get<std::uint64_t>() % 9, j["residues"]["9"].get<std::uint64_t>());
	EXPECT_EQ(j["verified_to"], 100000);
}

TEST(Cli, ConstructNotFoundExitsTwo)
{
	auto dir = scratch("construct_nf");
	EXPECT_EQ(run("construct --a 1 --delta 5 --bound 10000", dir / "out.txt"), 2);
}

TEST(Cli, ConstructFromConfigWithOverride)
{
	auto dir = scratch("construct_cfg");
	auto cfg = write_config(dir, "c.json", {{"a", -1}, {"delta", 2}, {"bound", 1000}, {"verify", 20000}});
	ASSERT_EQ(run("--config " + cfg.string() + " --out " + (dir / "o").string() + " construct --verify 30000",
	              dir / "out.txt"),
	          0);
	auto j = json::parse(slurp(dir / "o" / "construct.json"));
	EXPECT_EQ(j["v"], 144);
	EXPECT_EQ(j["verified_to"], 30000);
}

TEST(Cli, BadConfigExitsFour)
{
	auto dir = scratch("badcfg");
	auto unknown = write_config(dir, "u.json", {{"a", -4}, {"delta", 5}, {"colour", "red"}});
	EXPECT_EQ(run("--config " + unknown.string() + " construct", dir / "o1.txt"), 4);
	auto sieve = write_config(dir, "s.json", {{"x", 1000}, {"u", 43}, {"v", 720}, {"z", 5000}});
	EXPECT_EQ(run("--config " + sieve.string() + " --out " + dir.string() + " sieve", dir / "o2.txt"), 4);
	EXPECT_EQ(run("--config " + (dir / "missing.json").string() + " construct", dir / "o3.txt"), 4);
	EXPECT_EQ(run("construct --a 1 --delta 1", dir / "o4.txt"), 2); // no seed exists: (1/p) = 1
	EXPECT_EQ(run("bogus", dir / "o5.txt"), 4);
}

TEST(Cli, Lemma42DependentExitsFiveWithRelation)
{
	auto dir = scratch("lemma42_dep");
	EXPECT_EQ(run("lemma42 --gens 2,4 --x 10000", dir / "out.txt"), 5);
	auto j = json::parse(slurp(dir / "out.txt"));
	EXPECT_EQ(j["relation"], json({2, -1}));
}

TEST(Cli, Lemma42SortsGridAndReportsSlope)
{
	auto dir = scratch("lemma42");
	ASSERT_EQ(run("lemma42 --gens 2,3 --x 100000 --grid 1000,10,100,31.6", dir / "out.txt"), 0);
	auto j = json::parse(slurp(dir / "out.txt"));
	std::vector<double> ys;
	for (auto &s : j["samples"])
		ys.push_back(s["y"].get<double>());
	EXPECT_TRUE(std::is_sorted(ys.begin(), ys.end()));
	ASSERT_TRUE(j["fitted_slope"].is_number());
	EXPECT_LE(j["fitted_slope"].get<double>(), 1.8);
}

TEST(Cli, IndependenceModes)
{
	auto dir = scratch("indep");
	EXPECT_EQ(run("independence --values 2,3,5/7", dir / "a.txt"), 0);
	EXPECT_EQ(run("independence --values 2,4", dir / "b.txt"), 5);
	auto fam = write_config(dir, "f.json", {{"delta", 5}, {"members", {{2, 1}, {1, 1}}}, {"B", 6}});
	EXPECT_EQ(run("--config " + fam.string() + " independence", dir / "c.txt"), 5);
	auto j = json::parse(slurp(dir / "c.txt"));
	EXPECT_TRUE(j["ratios"]["relation_found"].get<bool>());
}

TEST(Cli, ScanOutputsAndDeterminism)
{
	auto dir = scratch("scan");
	json cfg = {{"delta", 5},      {"members", {{2, 1}, {1, 1}, {3, 2}}}, {"prime_min", 3}, {"prime_max", 10000},
	            {"use_congruence", false}, {"delta1", 0.01}, {"B", 10}};
	auto c = write_config(dir, "scan.json", cfg);
	ASSERT_EQ(run("--config " + c.string() + " --out " + (dir / "r1").string() + " scan", dir / "o1.txt"), 0);
	ASSERT_EQ(run("--config " + c.string() + " --workers 3 --out " + (dir / "r2").string() + " scan", dir / "o2.txt"), 0);
	EXPECT_EQ(slurp(dir / "r1" / "scan.csv"), slurp(dir / "r2" / "scan.csv"));
	EXPECT_EQ(slurp(dir / "r1" / "scan_summary.json"), slurp(dir / "r2" / "scan_summary.json"));
	auto s = json::parse(slurp(dir / "r1" / "scan_summary.json"));
	EXPECT_EQ(s["prime_count"], 618);
	EXPECT_EQ(s["attainment_family"], 610);
	EXPECT_GT(s["attainment_family_fraction"].get<double>(), 0);
	EXPECT_EQ(s["remark12_violations"], 0);
	auto csv = slurp(dir / "r1" / "scan.csv");
	EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,member,label,ord_alpha,ord_N,ord_M,attained");
	EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 618);
}

TEST(Cli, ScanEmptyRange)
{
	auto dir = scratch("scan_empty");
	json cfg = {{"delta", 5}, {"members", {{2, 1}}}, {"prime_min", 100}, {"prime_max", 50}};
	auto c = write_config(dir, "scan.json", cfg);
	ASSERT_EQ(run("--config " + c.string() + " --out " + dir.string() + " scan", dir / "o.txt"), 0);
	EXPECT_EQ(slurp(dir / "scan.csv"), "p,member,label,ord_alpha,ord_N,ord_M,attained\n");
	auto s = json::parse(slurp(dir / "scan_summary.json"));
	EXPECT_EQ(s["prime_count"], 0);
	EXPECT_EQ(s["attainment_family"], 0);
}

TEST(Cli, ScanWithCongruence)
{
	auto dir = scratch("scan_cong");
	json cfg = {{"delta", 5}, {"members", {{2, 1}, {1, 1}, {3, 2}}}, {"prime_max", 200000}, {"use_congruence", true},
	            {"a", -4}};
	auto c = write_config(dir, "scan.json", cfg);
	ASSERT_EQ(run("--config " + c.string() + " --out " + dir.string() + " scan", dir / "o.txt"), 0);
	auto s = json::parse(slurp(dir / "scan_summary.json"));
	EXPECT_EQ(s["congruence"]["u"], 43);
	EXPECT_EQ(s["congruence"]["v"], 720);
	EXPECT_GT(s["prime_count"].get<int>(), 0);
}

TEST(Cli, SieveRowsAndCrossCommandConsistency)
{
	auto dir = scratch("sieve");
	json cfg = {{"x", 100000}, {"u", 43}, {"v", 720}, {"z", 2}, {"d_min", 1}, {"d_max", 60}};
	auto c = write_config(dir, "s.json", cfg);
	ASSERT_EQ(run("--config " + c.string() + " --out " + dir.string() + " sieve", dir / "o.txt"), 0);
	auto csv = slurp(dir / "sieve.csv");
	std::istringstream lines(csv);
	std::string line;
	std::getline(lines, line);
	EXPECT_EQ(line, "d,rho,Ad,main,Rd");
	std::uint64_t d1_count = 0;
	while (std::getline(lines, line))
	{
		std::uint64_t d = 0, rho = 0, ad = 0;
		ASSERT_EQ(std::sscanf(line.c_str(), "%lu,%lu,%lu", &d, &rho, &ad), 3);
		auto f = qartin::factorize(d);
		ASSERT_EQ(rho, std::uint64_t{1} << f.nu()) << d;
		if (d == 1)
			d1_count = ad;
	}
	auto r = json::parse(slurp(dir / "sieve_report.json"));
	EXPECT_EQ(r["survivors"]["count"].get<std::uint64_t>(), d1_count);
	EXPECT_EQ(r["progression_count"].get<std::uint64_t>(), d1_count);
}

TEST(Cli, SieveSingleRowAndDeterminism)
{
	auto dir = scratch("sieve_det");
	json cfg = {{"x", 1000000}, {"a", -4}, {"delta", 5}, {"d_min", 1}, {"d_max", 1}};
	auto c = write_config(dir, "s.json", cfg);
	ASSERT_EQ(run("--config " + c.string() + " --out " + (dir / "r1").string() + " sieve", dir / "o1.txt"), 0);
	ASSERT_EQ(run("--config " + c.string() + " --out " + (dir / "r2").string() + " sieve", dir / "o2.txt"), 0);
	auto csv = slurp(dir / "r1" / "sieve.csv");
	EXPECT_EQ(csv, slurp(dir / "r2" / "sieve.csv"));
	EXPECT_EQ(slurp(dir / "r1" / "sieve_report.json"), slurp(dir / "r2" / "sieve_report.json"));
	EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
	auto r = json::parse(slurp(dir / "r1" / "sieve_report.json"));
	EXPECT_EQ(r["z"], 6);
	EXPECT_EQ(r["survivors"]["count"], 404);
}

TEST(Cli, SampleConfigsParse)
{
	for (const char *name : {"scan_delta5.json", "scan_progression.json"})
		EXPECT_NO_THROW(qartin::cli::scan_params({qartin::io::read_json_file(fs::path(QARTIN_CONFIG_DIR) / name), name}));
	for (const char *name : {"sieve_minus4_5.json", "sieve_uv.json"})
		EXPECT_NO_THROW(qartin::cli::sieve_params({qartin::io::read_json_file(fs::path(QARTIN_CONFIG_DIR) / name), name}));
	EXPECT_NO_THROW(
	    qartin::cli::lemma42_params({qartin::io::read_json_file(fs::path(QARTIN_CONFIG_DIR) / "lemma42.json"), "l"}));
	EXPECT_NO_THROW(qartin::cli::independence_params(
	    {qartin::io::read_json_file(fs::path(QARTIN_CONFIG_DIR) / "independence_family.json"), "i"}));
}

TEST(Cli, ParseRational)
{
	using qartin::cli::parse_rational;
	EXPECT_EQ(parse_rational("3/6"), qartin::Rational(static_cast<qartin::i128>(1), static_cast<qartin::i128>(2)));
	EXPECT_EQ(parse_rational("-4"), qartin::Rational(-4));
	EXPECT_THROW(parse_rational("x"), qartin::config_error);
	EXPECT_THROW(parse_rational("1/0"), qartin::config_error);
	EXPECT_THROW(parse_rational("1/"), qartin::config_error);
}
