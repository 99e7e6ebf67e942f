#include "aisel/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aisel {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

KvConfig KvConfig::parse_string(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg.entries_[key] = value;
  }
  return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool KvConfig::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

void KvConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

std::string KvConfig::get_string(const std::string& key,
                                 const std::string& dflt) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? dflt : it->second;
}

double KvConfig::get_double(const std::string& key, double dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "': not a number: " +
                                it->second);
  }
}

int KvConfig::get_int(const std::string& key, int dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  try {
    std::size_t pos = 0;
    long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "': not an integer: " +
                                it->second);
  }
}

std::uint64_t KvConfig::get_uint64(const std::string& key,
                                   std::uint64_t dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return static_cast<std::uint64_t>(v);
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "': not an integer: " +
                                it->second);
  }
}

bool KvConfig::get_bool(const std::string& key, bool dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: " + v);
}

std::vector<double> load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open series file: " + path);
  std::vector<double> y;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      y.push_back(std::stod(line));
    } catch (...) {
      throw std::invalid_argument("series file " + path + " line " +
                                  std::to_string(lineno) + ": not a number");
    }
  }
  if (y.empty())
    throw std::invalid_argument("series file " + path + " is empty");
  return y;
}

void save_series(const std::string& path, const std::vector<double>& y) {
  auto out = open_out(path);
  for (double v : y) out << format_double(v) << '\n';
}

std::vector<double> center_series(std::vector<double> y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  for (double& v : y) v -= mean;
  return y;
}

void save_glmm_csv(const std::string& path, const GlmmData& data) {
  auto out = open_out(path);
  out << "cluster_id,y,x1,x2,x3,z\n";
  for (std::size_t r = 0; r < data.rows(); ++r) {
    out << (r / data.n_i) << ',' << data.y[r] << ','
        << format_double(data.x[r][0]) << ',' << format_double(data.x[r][1])
        << ',' << format_double(data.x[r][2]) << ','
        << format_double(data.z[r]) << '\n';
  }
}

GlmmData load_glmm_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open GLMM csv: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("GLMM csv is empty: " + path);
  GlmmData data;
  std::vector<int> clusters;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6)
      throw std::invalid_argument("GLMM csv: expected 6 columns: " + line);
    clusters.push_back(std::stoi(fields[0]));
    data.y.push_back(std::stoi(fields[1]));
    data.x.push_back({std::stod(fields[2]), std::stod(fields[3]),
                      std::stod(fields[4])});
    data.z.push_back(std::stod(fields[5]));
  }
  if (clusters.empty())
    throw std::invalid_argument("GLMM csv has no data rows: " + path);
  data.m = *std::max_element(clusters.begin(), clusters.end()) + 1;
  if (data.y.size() % data.m != 0)
    throw std::invalid_argument("GLMM csv: unbalanced clusters");
  data.n_i = static_cast<int>(data.y.size()) / data.m;
  for (std::size_t r = 0; r < data.rows(); ++r)
    if (clusters[r] != static_cast<int>(r) / data.n_i)
      throw std::invalid_argument("GLMM csv: rows must be grouped by cluster");
  return data;
}

void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv) {
  auto out = open_out(path);
  for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
}

void write_posterior_csv(const std::string& path,
                         const std::vector<ParamSummary>& posterior) {
  auto out = open_out(path);
  out << "param,mean,sd\n";
  for (const auto& p : posterior)
    out << p.name << ',' << format_double(p.mean) << ',' << format_double(p.sd)
        << '\n';
}

void write_trace_csv(const std::string& path, const SweepTrace& trace) {
  auto out = open_out(path);
  out << "t,a,ess_before,ess_after,resampled,acceptance_rate,f_hat,"
         "mean_log_lhat,var_log_lhat\n";
  for (const auto& r : trace.records) {
    out << r.t << ',' << format_double(r.a) << ','
        << format_double(r.ess_before) << ',' << format_double(r.ess_after)
        << ',' << (r.resampled ? 1 : 0) << ','
        << format_double(r.acceptance_rate) << ',' << format_double(r.f_hat)
        << ',' << format_double(r.mean_log_lhat) << ','
        << format_double(r.var_log_lhat) << '\n';
  }
}

void write_evidence_csv(const std::string& path, const EvidenceTrace& evidence) {
  auto out = open_out(path);
  out << "t,a,f_hat\n";
  for (std::size_t t = 0; t < evidence.temperatures.size(); ++t)
    out << t << ',' << format_double(evidence.temperatures[t]) << ','
        << format_double(evidence.f_hat[t]) << '\n';
}

void write_sweep_csv(const std::string& path,
                     const std::vector<TnvSweepRow>& rows) {
  auto out = open_out(path);
  out << "N,tnv,var,seconds\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_double(r.tnv) << ',' << format_double(r.var)
        << ',' << format_double(r.seconds) << '\n';
}

}  // namespace aisel
