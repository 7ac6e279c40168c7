#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "zfb/dataset.hpp"

namespace zfb {

inline nlohmann::ordered_json to_json(const StatsReport& r) {
  auto number = [](double x) { return std::isnan(x) ? nlohmann::ordered_json() : nlohmann::ordered_json(x); };
  nlohmann::ordered_json j;
  j["graph_count"] = r.graph_count;
  j["node_min"] = r.node_min;
  j["node_max"] = r.node_max;
  j["avg_degree_original"] = r.avg_degree_original;
  j["density_min_original"] = number(r.density_min_original);
  j["density_max_original"] = number(r.density_max_original);
  if (r.avg_degree_backbone) {
    j["avg_degree_backbone"] = *r.avg_degree_backbone;
    j["density_min_backbone"] = number(*r.density_min_backbone);
    j["density_max_backbone"] = number(*r.density_max_backbone);
  }
  return j;
}

namespace detail {

inline std::string fixed(double x, int digits) {
  if (std::isnan(x)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace detail

inline void print_stats_header(std::ostream& os) {
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %8s %6s %6s %9s %9s %8s %8s %8s %8s\n", "dataset", "graphs", "n_min",
                "n_max", "deg_orig", "deg_bb", "dens_min", "dens_max", "bb_min", "bb_max");
  os << line;
}

/// One row in the column order of the usual dataset statistics table.
inline void print_stats_row(std::ostream& os, const std::string& name, const StatsReport& r) {
  auto opt = [](const std::optional<double>& x, int digits) { return x ? detail::fixed(*x, digits) : std::string("-"); };
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %8zu %6zu %6zu %9s %9s %8s %8s %8s %8s\n", name.c_str(), r.graph_count,
                r.node_min, r.node_max, detail::fixed(r.avg_degree_original, 3).c_str(),
                opt(r.avg_degree_backbone, 3).c_str(), detail::fixed(r.density_min_original, 3).c_str(),
                detail::fixed(r.density_max_original, 3).c_str(), opt(r.density_min_backbone, 3).c_str(),
                opt(r.density_max_backbone, 3).c_str());
  os << line;
}

}  // namespace zfb
