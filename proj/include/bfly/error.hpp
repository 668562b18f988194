#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bfly {

enum class errc {
  duplicate_edge,
  id_out_of_range,
  same_node,
  invalid_swap,
  infeasible_size,
  invalid_params,
  infeasible_degrees,
  limit_exceeded,
  degree_mismatch,
  identical_graphs,
  invalid_config,
  empty_catalog,
  parse_error,
};

inline std::string_view to_string(errc code) {
  switch (code) {
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::id_out_of_range: return "IdOutOfRange";
    case errc::same_node: return "SameNode";
    case errc::invalid_swap: return "InvalidSwap";
    case errc::infeasible_size: return "InfeasibleSize";
    case errc::invalid_params: return "InvalidParams";
    case errc::infeasible_degrees: return "InfeasibleDegrees";
    case errc::limit_exceeded: return "LimitExceeded";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::identical_graphs: return "IdenticalGraphs";
    case errc::invalid_config: return "InvalidConfig";
    case errc::empty_catalog: return "EmptyCatalog";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Exception type for every failure raised by the library. `detail` carries a
/// numeric payload where one makes sense (partial member count for
/// LimitExceeded, line number for ParseError).
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what, std::uint64_t detail = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(detail) {}

  errc code() const noexcept { return code_; }
  std::uint64_t detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::uint64_t detail_;
};

}  // namespace bfly
