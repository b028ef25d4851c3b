#ifndef DPRLNS_INSTANCE_IO_HPP_
#define DPRLNS_INSTANCE_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "dprlns/instance.hpp"
#include "dprlns/solution.hpp"

namespace dprlns {

inline constexpr const char* kInstanceFormat = "dprlns-instance/1";
inline constexpr const char* kSolutionFormat = "dprlns-solution/1";

/// Solomon / Gehring & Homberger text layout. The vehicle NUMBER field is
/// read but ignored (the fleet is unbounded). Throws ParseError.
Instance parse_solomon(std::istream& in);
Instance parse_solomon(const std::string& text);

/// Depot plus customers 1..n.
Instance take_prefix(const Instance& instance, std::size_t n);

std::string serialize_instance(const Instance& instance);
Instance parse_instance(const std::string& text);

/// Reads either format (a leading '{' selects the native one), optionally
/// truncated to the first `prefix` customers.
Instance load_instance(const std::filesystem::path& path,
                       std::optional<std::size_t> prefix = std::nullopt);

std::string serialize_solution(const Instance& instance, const Solution& solution);

}  // namespace dprlns

#endif  // DPRLNS_INSTANCE_IO_HPP_
