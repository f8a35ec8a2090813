#include "tct/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "tct/error.hpp"

using nlohmann::json;

namespace tct::evaluation {

ConfusionCounts confusion(const std::vector<std::string>& gold,
                          const std::vector<std::string>& predicted,
                          const std::vector<std::string>& categories) {
  if (gold.size() != predicted.size())
    throw DataError("confusion: gold and predicted lengths differ (" +
                    std::to_string(gold.size()) + " vs " +
                    std::to_string(predicted.size()) + ")");
  if (gold.empty()) throw DataError("confusion: empty label lists");

  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < categories.size(); ++i) idx[categories[i]] = i;

  ConfusionCounts c;
  c.categories = categories;
  c.matrix.assign(categories.size(), std::vector<long>(categories.size(), 0));
  for (const auto& cat : categories) c.tp[cat] = c.fp[cat] = c.fn[cat] = 0;

  for (size_t k = 0; k < gold.size(); ++k) {
    auto gi = idx.find(gold[k]);
    if (gi == idx.end()) throw DataError("unknown gold label: " + gold[k]);
    auto pi = idx.find(predicted[k]);
    if (pi == idx.end()) throw DataError("unknown predicted label: " + predicted[k]);
    c.matrix[gi->second][pi->second] += 1;
    if (gold[k] == predicted[k]) {
      c.tp[gold[k]] += 1;
    } else {
      c.fn[gold[k]] += 1;
      c.fp[predicted[k]] += 1;
    }
    c.total += 1;
  }
  return c;
}

std::map<std::string, std::pair<double, double>> precision_recall(
    const ConfusionCounts& counts) {
  std::map<std::string, std::pair<double, double>> out;
  for (const auto& cat : counts.categories) {
    long tp = counts.tp.at(cat), fp = counts.fp.at(cat), fn = counts.fn.at(cat);
    double p = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    double r = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    out[cat] = {p, r};
  }
  return out;
}

double f1(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

EvalReport macro_report(const ConfusionCounts& counts, const std::string& config_label,
                        const std::string& test_set_id) {
  EvalReport rep;
  rep.config_label = config_label;
  rep.test_set_id = test_set_id;
  rep.counts = counts;
  auto pr = precision_recall(counts);
  double p_sum = 0.0, r_sum = 0.0;
  for (const auto& cat : counts.categories) {
    auto [p, r] = pr.at(cat);
    rep.per_category[cat] = {p, r, f1(p, r)};
    p_sum += p;
    r_sum += r;
  }
  double n = static_cast<double>(counts.categories.size());
  rep.p_ave = p_sum / n;
  rep.r_ave = r_sum / n;
  rep.f1_ave = f1(rep.p_ave, rep.r_ave);
  return rep;
}

namespace {

std::string pct(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v * 100.0;
  return os.str();
}

void check_same_test_set(const std::vector<EvalReport>& reports) {
  if (reports.size() < 2) throw ConfigError("comparison needs at least 2 reports");
  for (size_t i = 1; i < reports.size(); ++i) {
    if (reports[i].test_set_id != reports[0].test_set_id ||
        reports[i].counts.total != reports[0].counts.total ||
        reports[i].counts.categories != reports[0].counts.categories)
      throw DataError("comparison reports come from different test sets");
  }
}

json report_records(const EvalReport& rep) {
  json records = json::array();
  for (const auto& cat : rep.counts.categories) {
    const auto& s = rep.per_category.at(cat);
    records.push_back({{"config", rep.config_label},
                       {"category", cat},
                       {"tp", rep.counts.tp.at(cat)},
                       {"fp", rep.counts.fp.at(cat)},
                       {"fn", rep.counts.fn.at(cat)},
                       {"precision", s.precision},
                       {"recall", s.recall},
                       {"f1", s.f1}});
  }
  records.push_back({{"config", rep.config_label},
                     {"category", "__macro__"},
                     {"precision", rep.p_ave},
                     {"recall", rep.r_ave},
                     {"f1", rep.f1_ave}});
  return records;
}

}  // namespace

std::string comparison_table(const std::vector<EvalReport>& reports) {
  check_same_test_set(reports);
  std::ostringstream os;
  os << "# Macro-averaged results (percent); zero-denominator P/R convention: 0\n";
  os << std::left << std::setw(36) << "Configuration" << std::right << std::setw(10)
     << "Precision" << std::setw(10) << "Recall" << std::setw(12) << "F1-measure" << '\n';
  for (const auto& rep : reports) {
    os << std::left << std::setw(36) << rep.config_label << std::right << std::setw(10)
       << pct(rep.p_ave) << std::setw(10) << pct(rep.r_ave) << std::setw(12)
       << pct(rep.f1_ave) << '\n';
  }
  return os.str();
}

std::string comparison_json(const std::vector<EvalReport>& reports) {
  check_same_test_set(reports);
  json all = json::array();
  for (const auto& rep : reports)
    for (auto& rec : report_records(rep)) all.push_back(std::move(rec));
  return all.dump(2);
}

std::string report_json(const EvalReport& report) {
  return report_records(report).dump(2);
}

std::string report_text(const EvalReport& report) {
  std::ostringstream os;
  os << "# Per-category results (percent); zero-denominator P/R convention: 0\n";
  os << "# config: " << report.config_label << '\n';
  os << std::left << std::setw(20) << "Category" << std::right << std::setw(8) << "TP"
     << std::setw(8) << "FP" << std::setw(8) << "FN" << std::setw(12) << "Precision"
     << std::setw(10) << "Recall" << std::setw(12) << "F1" << '\n';
  for (const auto& cat : report.counts.categories) {
    const auto& s = report.per_category.at(cat);
    os << std::left << std::setw(20) << cat << std::right << std::setw(8)
       << report.counts.tp.at(cat) << std::setw(8) << report.counts.fp.at(cat)
       << std::setw(8) << report.counts.fn.at(cat) << std::setw(12) << pct(s.precision)
       << std::setw(10) << pct(s.recall) << std::setw(12) << pct(s.f1) << '\n';
  }
  os << std::left << std::setw(20) << "macro" << std::right << std::setw(8) << ""
     << std::setw(8) << "" << std::setw(8) << "" << std::setw(12) << pct(report.p_ave)
     << std::setw(10) << pct(report.r_ave) << std::setw(12) << pct(report.f1_ave) << '\n';
  return os.str();
}

}  // namespace tct::evaluation
