#pragma once

/**
 * @file io.hpp
 * @brief Config parsing and deterministic output helpers for the command layer.
 *
 * Configs are JSON objects with a closed key set; anything unknown or
 * mistyped is a config_error. Floats are written in shortest round-trip form
 * so that reruns are byte-identical.
 */

#include "qartin/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qartin::io {

using json = nlohmann::json;

inline json read_json_file(const std::filesystem::path &path)
{
	std::ifstream in(path);
	if (!in)
		throw config_error("cannot open config " + path.string());
	try
	{
		return json::parse(in);
	}
	catch (const json::parse_error &e)
	{
		throw config_error("config " + path.string() + ": " + e.what());
	}
}

/// Typed, strict view of a config object.
class Config
{
public:
	Config(json j, std::string where) : j_(std::move(j)), where_(std::move(where))
	{
		if (!j_.is_object())
			throw config_error(where_ + ": config must be a JSON object");
	}

	/// Rejects keys outside `allowed`.
	void allow_only(std::initializer_list<const char *> allowed) const
	{
		std::set<std::string> ok(allowed.begin(), allowed.end());
		for (auto it = j_.begin(); it != j_.end(); ++it)
			if (!ok.count(it.key()))
				throw config_error(where_ + ": unknown key '" + it.key() + "'");
	}

	bool has(const std::string &key) const { return j_.contains(key) && !j_.at(key).is_null(); }

	template <class T>
	T get(const std::string &key) const
	{
		if (!has(key))
			throw config_error(where_ + ": missing key '" + key + "'");
		try
		{
			return j_.at(key).get<T>();
		}
		catch (const json::exception &e)
		{
			throw config_error(where_ + ": key '" + key + "' has the wrong type (" + e.what() + ")");
		}
	}

	template <class T>
	T get_or(const std::string &key, T fallback) const
	{
		return has(key) ? get<T>(key) : fallback;
	}

	/// Nonnegative integer; accepts JSON integers and integral floats such as 1e6.
	std::uint64_t get_count(const std::string &key) const
	{
		if (!has(key))
			throw config_error(where_ + ": missing key '" + key + "'");
		const json &v = j_.at(key);
		if (v.is_number_unsigned())
			return v.get<std::uint64_t>();
		if (v.is_number_integer())
		{
			auto s = v.get<std::int64_t>();
			if (s < 0)
				throw config_error(where_ + ": key '" + key + "' must be nonnegative");
			return static_cast<std::uint64_t>(s);
		}
		if (v.is_number_float())
		{
			double d = v.get<double>();
			if (d < 0 || d > 1.8e19 || d != static_cast<double>(static_cast<std::uint64_t>(d)))
				throw config_error(where_ + ": key '" + key + "' must be a nonnegative integer");
			return static_cast<std::uint64_t>(d);
		}
		throw config_error(where_ + ": key '" + key + "' must be a number");
	}

	std::uint64_t get_count_or(const std::string &key, std::uint64_t fallback) const
	{
		return has(key) ? get_count(key) : fallback;
	}

	const json &raw() const { return j_; }
	const std::string &where() const { return where_; }

private:
	json j_;
	std::string where_;
};

/// Shortest representation that round-trips; identical across runs and platforms with IEEE doubles.
inline std::string num(double v) { return fmt::format("{}", v); }

inline std::string csv_field(const std::string &s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s)
	{
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

inline void write_text(const std::filesystem::path &path, const std::string &text)
{
	if (path.has_parent_path())
		std::filesystem::create_directories(path.parent_path());
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot write " + path.string());
	out << text;
}

inline void write_json(const std::filesystem::path &path, const json &j) { write_text(path, j.dump(2) + "\n"); }

/// Comma-separated integers, e.g. "2,3" or "-4".
inline std::vector<std::int64_t> parse_int_list(const std::string &s)
{
	std::vector<std::int64_t> out;
	std::size_t pos = 0;
	while (pos <= s.size())
	{
		auto comma = s.find(',', pos);
		auto tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
		try
		{
			std::size_t used = 0;
			out.push_back(std::stoll(tok, &used));
			if (used != tok.size())
				throw std::invalid_argument(tok);
		}
		catch (const std::exception &)
		{
			throw config_error("not an integer: '" + tok + "'");
		}
		if (comma == std::string::npos)
			break;
		pos = comma + 1;
	}
	return out;
}

} // namespace qartin::io
