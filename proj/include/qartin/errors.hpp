#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qartin {

/// A bounded search ran out of candidates.
class not_found : public std::runtime_error
{
public:
	not_found(const std::string &what, std::uint64_t bound)
	    : std::runtime_error(what), bound_(bound)
	{}

	std::uint64_t bound() const noexcept { return bound_; }

private:
	std::uint64_t bound_;
};

/// A postcondition guaranteed by the mathematics failed to hold.
class invariant_violation : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

/// Inconsistent or malformed run configuration.
class config_error : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

} // namespace qartin
