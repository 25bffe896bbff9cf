#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "coocnet/graph.hpp"
#include "coocnet/text.hpp"

namespace coocnet {
namespace {

constexpr std::string_view kMagic = "# cooc-graph v1 kind=";

std::string located(std::string_view source, std::size_t line, std::string_view what) {
  return std::string(source) + ":" + std::to_string(line) + ": " + std::string(what);
}

}  // namespace

void write_graph(std::ostream& out, const CoocGraph& g) {
  out << kMagic << kind_tag(g.kind()) << '\n';
  for (const auto& e : g.edges()) out << g.name(e.u) << '\t' << g.name(e.v) << '\t' << e.weight << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) out << g.name(v) << "\t\t0\n";
}

CoocGraph read_graph(std::istream& in, std::string_view source_name) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw DataError(located(source_name, 1, "empty graph file"));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!line.starts_with(kMagic))
    throw DataError(located(source_name, 1, "missing '# cooc-graph v1 kind=...' header"));
  const EntityKind kind = parse_kind(std::string_view(line).substr(kMagic.size()));

  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> ids;
  auto intern = [&](std::string_view name) {
    auto [it, inserted] = ids.try_emplace(std::string(name), static_cast<VertexId>(names.size()));
    if (inserted) names.emplace_back(name);
    return it->second;
  };
  std::vector<WeightedEdge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!text::is_valid_utf8(line)) throw DecodeError(located(source_name, line_no, "invalid UTF-8"));
    const std::string_view row = line;
    const auto tab1 = row.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : row.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || row.find('\t', tab2 + 1) != std::string_view::npos)
      throw DataError(located(source_name, line_no, "expected 3 TAB-separated fields"));
    const auto u = row.substr(0, tab1);
    const auto v = row.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto w = row.substr(tab2 + 1);
    EdgeWeight weight = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc{} || ptr != w.data() + w.size())
      throw DataError(located(source_name, line_no, "bad weight '" + std::string(w) + "'"));
    if (u.empty()) throw DataError(located(source_name, line_no, "empty vertex name"));
    if (v.empty()) {
      if (weight != 0) throw DataError(located(source_name, line_no, "isolated vertex rows carry weight 0"));
      intern(u);
      continue;
    }
    if (weight == 0) throw DataError(located(source_name, line_no, "edge weight must be >= 1"));
    if (u == v) throw DataError(located(source_name, line_no, "self-loop"));
    const VertexId a = intern(u);
    const VertexId b = intern(v);
    edges.push_back({a, b, weight});
  }
  try {
    return CoocGraph::from_edges(kind, std::move(names), std::move(edges), std::string(source_name));
  } catch (const DataError& e) {
    throw DataError(std::string(source_name) + ": " + e.what());
  }
}

void write_graph_file(const std::filesystem::path& path, const CoocGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot open for writing");
  write_graph(out, g);
  if (!out) throw DataError(path.string() + ": write failed");
}

CoocGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open graph file");
  return read_graph(in, path.string());
}

}  // namespace coocnet
