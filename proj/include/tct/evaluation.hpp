#pragma once

#include <map>
#include <string>
#include <vector>

namespace tct::evaluation {

struct ConfusionCounts {
  std::vector<std::string> categories;
  std::vector<std::vector<long>> matrix;  // [gold][predicted]
  std::map<std::string, long> tp, fp, fn;
  long total = 0;
};

struct CategoryScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::string config_label;
  std::string test_set_id;  // identifies the gold labels the report was computed on
  ConfusionCounts counts;
  std::map<std::string, CategoryScore> per_category;
  double p_ave = 0.0;
  double r_ave = 0.0;
  // Harmonic mean of p_ave and r_ave, not the mean of per-category F1s.
  double f1_ave = 0.0;
};

ConfusionCounts confusion(const std::vector<std::string>& gold,
                          const std::vector<std::string>& predicted,
                          const std::vector<std::string>& categories);

/// P = TP/(TP+FP), R = TP/(TP+FN); zero denominators yield 0.
std::map<std::string, std::pair<double, double>> precision_recall(
    const ConfusionCounts& counts);

double f1(double p, double r);

EvalReport macro_report(const ConfusionCounts& counts,
                        const std::string& config_label = "",
                        const std::string& test_set_id = "");

/// Side-by-side table of configurations over one shared test set.
/// Values formatted as percentages with 2 decimals.
std::string comparison_table(const std::vector<EvalReport>& reports);

/// One JSON record per (config, category) plus a macro row per config.
std::string comparison_json(const std::vector<EvalReport>& reports);

/// Machine-readable single-report records, same schema as comparison_json.
std::string report_json(const EvalReport& report);
std::string report_text(const EvalReport& report);

}  // namespace tct::evaluation
