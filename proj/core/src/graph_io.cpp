#include <charconv>
#include <fstream>
#include <sstream>

#include "imfgraph/error.hpp"
#include "imfgraph/io.hpp"
#include "json.hpp"

namespace imfgraph::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("double formatting failed");
  return {buf, ptr};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string edges_csv(const Graph& g) {
  std::string out;
  out.reserve(g.edges.size() * 12);
  for (const Edge& e : g.edges) {
    out += std::to_string(e.src);
    out += ',';
    out += std::to_string(e.dst);
    out += '\n';
  }
  return out;
}

std::string features_csv(const Graph& g) {
  std::string out;
  for (std::size_t i = 0; i < g.n; ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(g.node_features[i]);
    out += '\n';
  }
  return out;
}

std::string graph_json(const Graph& g) {
  json j;
  j["kind"] = to_string(g.kind);
  j["params"] = g.provenance.params;
  j["n"] = g.n;
  json edges = json::array();
  for (const Edge& e : g.edges) edges.push_back({e.src, e.dst});
  j["edges"] = std::move(edges);
  j["features"] = g.node_features;
  j["provenance"] = {{"component", g.provenance.component}};
  return j.dump() + "\n";
}

Graph parse_graph_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    Graph g;
    const auto kind = parse_graph_kind(j.at("kind").get<std::string>());
    if (!kind) throw IoError("unknown graph kind");
    g.kind = *kind;
    g.n = j.at("n").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
    }
    g.node_features = j.at("features").get<std::vector<double>>();
    if (j.contains("params")) g.provenance.params = j["params"].get<std::map<std::string, double>>();
    if (j.contains("provenance") && j["provenance"].contains("component")) {
      g.provenance.component = j["provenance"]["component"].get<std::string>();
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace imfgraph::io
