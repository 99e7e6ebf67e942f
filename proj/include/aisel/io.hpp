#pragma once

#include <map>
#include <string>
#include <vector>

#include "aisel/glmm.hpp"
#include "aisel/runner.hpp"
#include "aisel/sampler.hpp"

namespace aisel {

/// Plain `key = value` configuration text: one pair per line, `#` comments.
class KvConfig {
 public:
  KvConfig() = default;
  static KvConfig parse_file(const std::string& path);
  static KvConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

/// One real per line; blank lines and `#` comments are skipped.
std::vector<double> load_series(const std::string& path);
void save_series(const std::string& path, const std::vector<double>& y);
/// Subtracts the sample mean.
std::vector<double> center_series(std::vector<double> y);

void save_glmm_csv(const std::string& path, const GlmmData& data);
GlmmData load_glmm_csv(const std::string& path);

void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv);

void write_posterior_csv(const std::string& path,
                         const std::vector<ParamSummary>& posterior);
void write_trace_csv(const std::string& path, const SweepTrace& trace);
void write_evidence_csv(const std::string& path, const EvidenceTrace& evidence);
void write_sweep_csv(const std::string& path,
                     const std::vector<TnvSweepRow>& rows);

std::string format_double(double v);

}  // namespace aisel
