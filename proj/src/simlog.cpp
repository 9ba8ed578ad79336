#include "exovdc/simlog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exovdc {

int SimLog::column_index(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const std::string& col = columns[c];
    // match either the full header or the part before " ["
    if (col == name) return static_cast<int>(c);
    const auto sp = col.find(" [");
    if (sp != std::string::npos && col.compare(0, sp, name) == 0)
      return static_cast<int>(c);
  }
  return -1;
}

void SimLog::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out << ',';
    out << columns[c];
  }
  out << '\n';
  char buf[32];
  std::string line;
  for (std::size_t r = 0; r < rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < cols(); ++c) {
      if (c) line += ',';
      std::snprintf(buf, sizeof buf, "%.17g", at(r, c));
      line += buf;
    }
    line += '\n';
    out << line;
  }
}

SimLog SimLog::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  SimLog log;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty csv");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) log.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t n = 0;
    while (std::getline(ls, cell, ',')) {
      log.values.push_back(std::stod(cell));
      ++n;
    }
    if (n != log.cols()) throw std::runtime_error(path + ": ragged csv row");
    ++log.rows;
  }
  return log;
}

namespace {

struct ColRef {
  const SimLog* log;
  int idx;
  bool ok() const { return idx >= 0; }
  double operator()(std::size_t r) const { return log->at(r, idx); }
};

ColRef col(const SimLog& log, const std::string& name) {
  return {&log, log.column_index(name)};
}

}  // namespace

Metrics metrics(const SimLog& log) {
  Metrics m;
  if (log.rows == 0) return m;
  const std::size_t n = log.rows;

  for (int j = 0; j < 7; ++j) {
    const std::string js = std::to_string(j + 1);
    JointMetrics& jm = m.joint[j];
    const ColRef e = col(log, "e" + js);
    const ColRef ea = col(log, "ea" + js);
    const ColRef tc = col(log, "tau_cmd" + js);
    const ColRef ta = col(log, "tau_app" + js);
    double sum_e2 = 0.0, sum_t2 = 0.0;
    std::size_t clipped = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (e.ok()) {
        const double v = e(r);
        sum_e2 += v * v;
        jm.max_e = std::max(jm.max_e, std::abs(v));
      }
      if (ea.ok()) jm.max_ea = std::max(jm.max_ea, std::abs(ea(r)));
      if (tc.ok()) {
        const double v = tc(r);
        sum_t2 += v * v;
        jm.max_tau = std::max(jm.max_tau, std::abs(v));
        if (ta.ok() && ta(r) != v) ++clipped;
      }
    }
    jm.rms_e = std::sqrt(sum_e2 / n);
    jm.rms_tau = std::sqrt(sum_t2 / n);
    jm.sat_fraction = static_cast<double>(clipped) / n;
    m.max_ea = std::max(m.max_ea, jm.max_ea);
  }

  const ColRef margin = col(log, "barrier_margin");
  const ColRef mineig = col(log, "min_pseudo_eig");
  const ColRef vpf = col(log, "vpf_residual_rel");
  const ColRef wn = col(log, "w_norm_max");
  const ColRef en = col(log, "eps_norm_max");
  const ColRef pn = col(log, "phi_norm_max");
  m.has_estimates = wn.ok();
  m.min_barrier_margin = margin.ok() ? margin(0) : 0.0;
  m.min_pseudo_eig = mineig.ok() ? mineig(0) : 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (margin.ok()) m.min_barrier_margin = std::min(m.min_barrier_margin, margin(r));
    if (mineig.ok()) m.min_pseudo_eig = std::min(m.min_pseudo_eig, mineig(r));
    if (vpf.ok()) m.max_vpf_residual_rel = std::max(m.max_vpf_residual_rel, vpf(r));
    if (wn.ok()) m.max_w_norm = std::max(m.max_w_norm, wn(r));
    if (en.ok()) m.max_eps_norm = std::max(m.max_eps_norm, en(r));
    if (pn.ok()) m.max_phi_norm = std::max(m.max_phi_norm, pn(r));
  }
  if (wn.ok()) m.final_w_norm = wn(n - 1);
  if (en.ok()) m.final_eps_norm = en(n - 1);
  if (pn.ok()) m.final_phi_norm = pn(n - 1);
  return m;
}

std::string format_metrics(
    const std::vector<std::pair<std::string, Metrics>>& runs) {
  std::ostringstream out;
  const auto row = [&](const std::string& label, auto getter) {
    out << label;
    for (const auto& [name, m] : runs) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %14.6g", getter(m));
      out << buf;
    }
    out << '\n';
  };
  out << "metric         ";
  for (const auto& [name, m] : runs) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %14s", name.c_str());
    out << buf;
  }
  out << '\n';
  for (int j = 0; j < 7; ++j) {
    const std::string js = std::to_string(j + 1);
    row("rms_e" + js + " [rad]  ", [&](const Metrics& m) { return m.joint[j].rms_e; });
    row("max_e" + js + " [rad]  ", [&](const Metrics& m) { return m.joint[j].max_e; });
  }
  for (int j = 0; j < 7; ++j) {
    const std::string js = std::to_string(j + 1);
    row("max_ea" + js + " [rad] ", [&](const Metrics& m) { return m.joint[j].max_ea; });
  }
  for (int j = 0; j < 7; ++j) {
    const std::string js = std::to_string(j + 1);
    row("rms_tau" + js + " [N m]", [&](const Metrics& m) { return m.joint[j].rms_tau; });
    row("max_tau" + js + " [N m]", [&](const Metrics& m) { return m.joint[j].max_tau; });
    row("sat_frac" + js + "      ", [&](const Metrics& m) { return m.joint[j].sat_fraction; });
  }
  row("max_ea [rad]    ", [](const Metrics& m) { return m.max_ea; });
  row("barrier_margin  ", [](const Metrics& m) { return m.min_barrier_margin; });
  row("min_pseudo_eig  ", [](const Metrics& m) { return m.min_pseudo_eig; });
  row("max_w_norm      ", [](const Metrics& m) { return m.max_w_norm; });
  row("max_eps_norm    ", [](const Metrics& m) { return m.max_eps_norm; });
  row("max_phi_norm    ", [](const Metrics& m) { return m.max_phi_norm; });
  row("max_vpf_rel     ", [](const Metrics& m) { return m.max_vpf_residual_rel; });
  return out.str();
}

}  // namespace exovdc
