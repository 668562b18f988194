#pragma once

#include <charconv>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly {

// "bip v1" edge-list format:
//
//   bip 1
//   L <left_count>
//   R <right_count>
//   e <u> <a>        (one line per edge)
//
// Blank lines are ignored. Several graphs may follow each other in one
// stream; each starts with its own "bip 1" header.

inline std::string to_bip(const bipartite_graph& g) {
  std::string out = "bip 1\nL " + std::to_string(g.left_count()) + "\nR " +
                    std::to_string(g.right_count()) + "\n";
  for (const edge& e : g.edges()) {
    out += "e " + std::to_string(e.left) + " " + std::to_string(e.right) + "\n";
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline std::uint64_t parse_natural(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw error(errc::parse_error,
                "line " + std::to_string(line_no) + ": expected a natural, got '" +
                    std::string(tok) + "'",
                line_no);
  }
  return value;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& msg) {
  throw error(errc::parse_error, "line " + std::to_string(line_no) + ": " + msg, line_no);
}

}  // namespace detail

/// Reads every graph in the stream. Errors carry the offending line number.
inline std::vector<bipartite_graph> parse_bip_all(std::istream& in) {
  enum class state { header, left, right, edges };
  std::vector<bipartite_graph> graphs;
  state st = state::header;
  std::uint64_t left = 0;
  std::uint64_t right = 0;
  std::vector<edge> edges;
  std::set<edge> seen;
  std::size_t block_line = 0;

  auto finish = [&] {
    try {
      graphs.push_back(bipartite_graph::build(left, right, edges));
    } catch (const error& e) {
      detail::parse_fail(block_line, std::string("invalid graph: ") + e.what());
    }
    edges.clear();
    seen.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "bip") {
      if (st == state::left || st == state::right)
        detail::parse_fail(line_no, "new header before L/R lines");
      if (tok.size() != 2 || tok[1] != "1") detail::parse_fail(line_no, "expected 'bip 1'");
      if (st == state::edges) finish();
      st = state::left;
      block_line = line_no;
      continue;
    }
    switch (st) {
      case state::header:
        detail::parse_fail(line_no, "expected 'bip 1' header");
      case state::left:
        if (tok.size() != 2 || tok[0] != "L") detail::parse_fail(line_no, "expected 'L <count>'");
        left = detail::parse_natural(tok[1], line_no);
        st = state::right;
        break;
      case state::right:
        if (tok.size() != 2 || tok[0] != "R") detail::parse_fail(line_no, "expected 'R <count>'");
        right = detail::parse_natural(tok[1], line_no);
        st = state::edges;
        break;
      case state::edges: {
        if (tok.size() != 3 || tok[0] != "e") detail::parse_fail(line_no, "expected 'e <u> <a>'");
        const auto u = detail::parse_natural(tok[1], line_no);
        const auto a = detail::parse_natural(tok[2], line_no);
        if (u >= left || a >= right) detail::parse_fail(line_no, "edge endpoint out of range");
        if (!seen.insert({static_cast<node_id>(u), static_cast<node_id>(a)}).second) {
          detail::parse_fail(line_no, "duplicate edge");
        }
        edges.push_back({static_cast<node_id>(u), static_cast<node_id>(a)});
        break;
      }
    }
  }
  if (st == state::left || st == state::right) {
    detail::parse_fail(line_no, "unexpected end of input inside header");
  }
  if (st == state::edges) finish();
  return graphs;
}

inline std::vector<bipartite_graph> parse_bip_all(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_bip_all(in);
}

/// Reads exactly one graph.
inline bipartite_graph parse_bip(std::istream& in) {
  auto graphs = parse_bip_all(in);
  if (graphs.size() != 1) {
    throw error(errc::parse_error,
                "expected exactly one graph, found " + std::to_string(graphs.size()));
  }
  return std::move(graphs.front());
}

inline bipartite_graph parse_bip(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_bip(in);
}

}  // namespace bfly
