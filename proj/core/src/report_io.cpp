#include <charconv>
#include <cmath>

#include "imfgraph/error.hpp"
#include "imfgraph/io.hpp"
#include "json.hpp"

namespace imfgraph::io {

using nlohmann::ordered_json;

namespace {

ordered_json test_json(const stats::TestResult& t) {
  ordered_json j;
  j["name"] = t.name;
  j["statistic"] = t.statistic;  // NaN serialises as null
  j["p_value"] = t.p_value;
  j["p_clamped"] = t.p_clamped;
  j["critical_values"] = t.critical_values;
  j["null_hypothesis"] = t.null_hypothesis;
  j["reject_at_5pct"] = t.reject_at_5pct;
  j["degenerate"] = t.degenerate;
  if (!t.note.empty()) j["note"] = t.note;
  j["extras"] = t.extras;
  return j;
}

ordered_json mean_max_json(const std::optional<metrics::MeanMax>& m) {
  if (!m) return nullptr;
  return {{"mean", m->mean}, {"max", m->max}};
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string component_name(std::size_t index) { return "imf_" + std::to_string(index); }

}  // namespace

std::string suitability_json(const stats::SuitabilityReport& r) {
  ordered_json j;
  j["verdict"] = stats::to_string(r.verdict);
  j["price_nonstationary"] = r.price_nonstationary;
  j["returns_stationary"] = r.returns_stationary;
  j["nonlinear"] = r.nonlinear;
  j["price_adf"] = test_json(r.price_adf);
  j["price_kpss"] = test_json(r.price_kpss);
  j["returns_adf"] = test_json(r.returns_adf);
  j["returns_kpss"] = test_json(r.returns_kpss);
  ordered_json bds = ordered_json::array();
  for (const auto& t : r.bds) bds.push_back(test_json(t));
  j["bds"] = std::move(bds);
  j["ljung_box_sq"] = test_json(r.ljung_box_sq);
  j["jarque_bera"] = test_json(r.jarque_bera);
  j["jarque_bera_price"] = test_json(r.jarque_bera_price);
  j["sq_acf_significant_lags"] = r.sq_acf_significant_lags;
  j["max_sq_acf"] = r.max_sq_acf;
  j["rolling_vol"] = {{"mean", r.rolling_vol_mean}, {"max", r.rolling_vol_max}};
  j["returns_zero_crossings"] = r.returns_zero_crossings;
  j["window_zero_crossing_cv"] = r.window_zero_crossing_cv;
  return j.dump(2) + "\n";
}

std::string topology_json(const metrics::TopologyReport& r, std::string_view component,
                          std::string_view method) {
  ordered_json j;
  j["component"] = component;
  j["method"] = method;
  j["n"] = r.n;
  j["m"] = r.m;
  j["density"] = r.density;
  j["avg_degree"] = r.avg_degree;
  j["components"] = r.components;
  j["largest_component_size"] = r.largest_component_size;
  j["diameter"] = r.diameter;
  j["avg_eccentricity"] = r.avg_eccentricity;
  j["clustering"] = {{"mean", r.clustering_mean}, {"median", r.clustering_median}, {"std", r.clustering_std}};
  j["betweenness"] = mean_max_json(r.betweenness);
  j["closeness"] = mean_max_json(r.closeness);
  j["eigenvector"] = mean_max_json(r.eigenvector);
  j["eigenvector_converged"] = r.eigenvector_converged;
  return j.dump(2) + "\n";
}

std::string topology_csv_header() {
  return "component,method,n,m,density,avg_degree,components,largest_component_size,diameter,"
         "avg_eccentricity,clustering_mean,clustering_median,clustering_std,betweenness_mean,"
         "betweenness_max,closeness_mean,closeness_max,eigenvector_mean,eigenvector_max,"
         "eigenvector_converged\n";
}

std::string topology_csv_row(const metrics::TopologyReport& r, std::string_view component,
                             std::string_view method) {
  auto part = [](const std::optional<metrics::MeanMax>& m, bool max) -> std::optional<double> {
    if (!m) return std::nullopt;
    return max ? m->max : m->mean;
  };
  std::string row;
  row += component;
  row += ',';
  row += method;
  for (const std::string& v :
       {std::to_string(r.n), std::to_string(r.m), format_double(r.density), format_double(r.avg_degree),
        std::to_string(r.components), std::to_string(r.largest_component_size), std::to_string(r.diameter),
        format_double(r.avg_eccentricity), format_double(r.clustering_mean), format_double(r.clustering_median),
        format_double(r.clustering_std), cell(part(r.betweenness, false)), cell(part(r.betweenness, true)),
        cell(part(r.closeness, false)), cell(part(r.closeness, true)), cell(part(r.eigenvector, false)),
        cell(part(r.eigenvector, true)), std::string(r.eigenvector_converged ? "true" : "false")}) {
    row += ',';
    row += v;
  }
  row += '\n';
  return row;
}

std::string imfs_csv(const emd::Decomposition& d) {
  std::string out;
  for (const auto& imf : d.imfs) out += component_name(imf.index) + ",";
  out += "residue\n";
  for (std::size_t i = 0; i < d.residue.size(); ++i) {
    for (const auto& imf : d.imfs) {
      out += format_double(imf.values[i]);
      out += ',';
    }
    out += format_double(d.residue[i]);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<double>>> parse_columns_csv(std::string_view text) {
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  auto next_line = [&](std::string_view& line) {
    if (text.empty()) return false;
    const auto pos = text.find('\n');
    line = text.substr(0, pos);
    text = pos == std::string_view::npos ? std::string_view{} : text.substr(pos + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return true;
  };
  auto split = [](std::string_view line) {
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    return f;
  };
  std::string_view line;
  if (!next_line(line) || line.empty()) throw IoError("component CSV has no header");
  for (auto name : split(line)) cols.emplace_back(std::string(name), std::vector<double>{});
  std::size_t row = 1;
  while (next_line(line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != cols.size()) {
      throw IoError("component CSV row " + std::to_string(row) + " has the wrong field count");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(fields[c].data(), fields[c].data() + fields[c].size(), v);
      if (ec != std::errc{} || ptr != fields[c].data() + fields[c].size()) {
        throw IoError("component CSV row " + std::to_string(row) + " has a non-numeric field");
      }
      cols[c].second.push_back(v);
    }
  }
  return cols;
}

std::string imf_metrics_csv(const std::vector<emd::ImfMetrics>& m) {
  std::string out = "component,energy,variance,frequency_cycles,mean_amplitude,std\n";
  for (std::size_t k = 0; k < m.size(); ++k) {
    out += component_name(k + 1) + "," + format_double(m[k].energy) + "," + format_double(m[k].variance) +
           "," + std::to_string(m[k].dominant_frequency_cycles) + "," + format_double(m[k].mean_amplitude) +
           "," + format_double(m[k].std) + "\n";
  }
  return out;
}

std::string reconstruction_json(const emd::ReconstructionReport& r) {
  ordered_json j;
  j["imf_only_rmse"] = r.imf_rmse;
  j["imf_only_mae"] = r.imf_mae;
  j["full_max_abs_error"] = r.full_max_abs_error;
  j["residue"] = {{"mean", r.residue_mean}, {"std", r.residue_std}, {"min", r.residue_min},
                  {"max", r.residue_max},   {"extrema", r.residue_extrema},
                  {"monotonic", r.residue_monotonic}};
  return j.dump(2) + "\n";
}

std::string decomposition_json(const emd::Decomposition& d, const std::vector<emd::ImfMetrics>& m) {
  ordered_json j;
  j["method"] = emd::to_string(d.method);
  j["source_length"] = d.source_length;
  j["config"] = {{"max_imfs", d.config.max_imfs}, {"sd_thresh", d.config.sd_thresh},
                 {"s_number", d.config.s_number}, {"fixe_h", d.config.fixe_h},
                 {"trials", d.config.trials},     {"noise_width", d.config.noise_width},
                 {"seed", d.config.seed},         {"residue_range_ratio", d.config.residue_range_ratio}};
  ordered_json imfs = ordered_json::array();
  for (std::size_t k = 0; k < d.imfs.size(); ++k) {
    ordered_json e;
    e["index"] = d.imfs[k].index;
    e["imf_condition"] = emd::satisfies_imf_condition(d.imfs[k].values);
    if (k < m.size()) {
      e["metrics"] = {{"energy", m[k].energy},
                      {"variance", m[k].variance},
                      {"frequency_cycles", m[k].dominant_frequency_cycles},
                      {"mean_amplitude", m[k].mean_amplitude},
                      {"std", m[k].std}};
    }
    if (d.imfs[k].sift_info) {
      e["sift"] = {{"iterations", d.imfs[k].sift_info->iterations},
                   {"stop_rule", emd::to_string(d.imfs[k].sift_info->rule)}};
    }
    e["values"] = d.imfs[k].values;
    imfs.push_back(std::move(e));
  }
  j["imfs"] = std::move(imfs);
  j["residue"] = d.residue;
  return j.dump() + "\n";
}

}  // namespace imfgraph::io
