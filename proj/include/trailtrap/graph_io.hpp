#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trailtrap/graph.hpp"

namespace trailtrap {

// Edge-list text: "n m" on the first line, then m lines "u v" (0-indexed).
// Blank lines and lines starting with '#' are ignored.

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw InputError("edge list is empty");
  long n = -1, m = -1;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 0 || m < 0) throw InputError("bad edge-list header: '" + line + "'");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (long i = 0; i < m; ++i) {
    if (!next_line())
      throw InputError("edge list ended after " + std::to_string(i) + " of " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long a, b;
    if (!(row >> a >> b)) throw InputError("bad edge line: '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  return Graph(static_cast<int>(n), edges);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_edge_list(in);
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (auto e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

// graph6: N(n) followed by the upper triangle of the adjacency matrix in
// column order (0,1),(0,2),(1,2),(0,3),... packed six bits per byte, each
// byte offset by 63.

inline std::string to_graph6(const Graph& g) {
  const long n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  }
  if (nbits) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

inline Graph from_graph6(std::string_view s) {
  if (s.starts_with(">>graph6<<")) s.remove_prefix(10);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty graph6 string");
  if (s.front() == ':' || s.front() == '&') throw InputError("sparse6/digraph6 input is not supported");
  for (char c : s)
    if (c < 63 || c > 126) throw InputError("graph6 byte out of range in '" + std::string(s) + "'");

  std::size_t pos = 0;
  long n = 0;
  auto take = [&](int count) {
    long v = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= s.size()) throw InputError("truncated graph6 size field");
      v = (v << 6) | (s[pos++] - 63);
    }
    return v;
  };
  if (s[0] != 126) {
    n = take(1);
  } else if (s.size() > 1 && s[1] != 126) {
    ++pos;
    n = take(3);
  } else {
    pos += 2;
    n = take(6);
  }
  const long nbits = n * (n - 1) / 2;
  const long nbytes = (nbits + 5) / 6;
  if (static_cast<long>(s.size() - pos) != nbytes)
    throw InputError("graph6 string has " + std::to_string(s.size() - pos) + " data bytes, expected " +
                     std::to_string(nbytes));
  std::vector<std::pair<Vertex, Vertex>> edges;
  long k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int byte = s[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  return Graph(static_cast<int>(n), edges);
}

/// One graph per non-empty line.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(from_graph6(line));
  }
  return out;
}

inline std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_graph6_stream(in);
}

}  // namespace trailtrap
