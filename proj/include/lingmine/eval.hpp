#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "lingmine/core.hpp"

namespace lingmine {

struct ConfusionMatrix {
  std::size_t tp = 0;  // OFF predicted OFF
  std::size_t fn = 0;  // OFF predicted NOT
  std::size_t fp = 0;  // NOT predicted OFF
  std::size_t tn = 0;  // NOT predicted NOT

  std::size_t total() const { return tp + fn + fp + tn; }
};

struct EvalReport {
  double recall_off = 0, recall_not = 0, recall_macro = 0;
  double precision_off = 0, precision_not = 0;
  double f1_off = 0, f1_not = 0, f1_macro = 0;
  double accuracy = 0;
  ConfusionMatrix matrix;
  std::string model_name;
  std::string dataset_name;
  std::vector<std::string> flags;  // degenerate denominators are flagged, not hidden
};

inline ConfusionMatrix confusion(const std::vector<Label>& preds, const std::vector<Label>& golds) {
  if (preds.empty() || preds.size() != golds.size())
    throw data_error("confusion: prediction/gold lists empty or of different length");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (golds[i] == Label::OFF)
      preds[i] == Label::OFF ? ++m.tp : ++m.fn;
    else
      preds[i] == Label::OFF ? ++m.fp : ++m.tn;
  }
  return m;
}

inline EvalReport report(const ConfusionMatrix& m) {
  if (m.total() == 0) throw data_error("report: empty confusion matrix");
  EvalReport r;
  r.matrix = m;

  auto ratio = [&r](std::size_t num, std::size_t den, const char* flag, bool& defined) {
    if (den == 0) {
      defined = false;
      r.flags.push_back(flag);
      return 0.0;
    }
    defined = true;
    return static_cast<double>(num) / den;
  };
  bool ro_def, rn_def, po_def, pn_def;
  r.recall_off = ratio(m.tp, m.tp + m.fn, "recall_off undefined (no OFF gold)", ro_def);
  r.recall_not = ratio(m.tn, m.tn + m.fp, "recall_not undefined (no NOT gold)", rn_def);
  r.precision_off = ratio(m.tp, m.tp + m.fp, "precision_off undefined (no OFF predictions)", po_def);
  r.precision_not = ratio(m.tn, m.tn + m.fn, "precision_not undefined (no NOT predictions)", pn_def);

  auto f1 = [](double p, double rec) { return p + rec > 0 ? 2 * p * rec / (p + rec) : 0.0; };
  r.f1_off = f1(r.precision_off, r.recall_off);
  r.f1_not = f1(r.precision_not, r.recall_not);

  // macros over defined classes only
  if (ro_def && rn_def)
    r.recall_macro = (r.recall_off + r.recall_not) / 2;
  else
    r.recall_macro = ro_def ? r.recall_off : r.recall_not;
  bool f1o_def = ro_def && po_def, f1n_def = rn_def && pn_def;
  if (f1o_def && f1n_def)
    r.f1_macro = (r.f1_off + r.f1_not) / 2;
  else
    r.f1_macro = f1o_def ? r.f1_off : r.f1_not;

  r.accuracy = static_cast<double>(m.tp + m.tn) / m.total();
  return r;
}

enum class ReportFormat { TEXT, CSV, JSON };

inline ReportFormat report_format_from_string(std::string_view s) {
  if (s == "text") return ReportFormat::TEXT;
  if (s == "csv") return ReportFormat::CSV;
  if (s == "json") return ReportFormat::JSON;
  throw config_error("unknown report format: '" + std::string(s) + "'");
}

namespace eval_detail {

inline std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v * 100.0);
  return buf;
}

inline std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace eval_detail

// Rows of Recall / Recall_avg / F1_avg in percent, two decimals.
inline std::string render(const std::vector<EvalReport>& reports, ReportFormat format) {
  if (reports.empty()) throw data_error("render: no reports");
  using eval_detail::pct;
  std::string out;
  if (format == ReportFormat::CSV) {
    out = "model,dataset,recall,recall_avg,f1_avg\n";
    for (const auto& r : reports)
      out += r.model_name + "," + r.dataset_name + "," + pct(r.recall_off) + "," +
             pct(r.recall_macro) + "," + pct(r.f1_macro) + "\n";
    return out;
  }
  if (format == ReportFormat::JSON) {
    using eval_detail::full;
    out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      if (i) out += ",";
      out += "\n  {\"model\":\"" + r.model_name + "\",\"dataset\":\"" + r.dataset_name + "\"";
      out += ",\"recall_off\":" + full(r.recall_off) + ",\"recall_not\":" + full(r.recall_not);
      out += ",\"recall_macro\":" + full(r.recall_macro);
      out += ",\"precision_off\":" + full(r.precision_off) +
             ",\"precision_not\":" + full(r.precision_not);
      out += ",\"f1_off\":" + full(r.f1_off) + ",\"f1_not\":" + full(r.f1_not) +
             ",\"f1_macro\":" + full(r.f1_macro);
      out += ",\"accuracy\":" + full(r.accuracy);
      out += ",\"matrix\":{\"tp\":" + std::to_string(r.matrix.tp) +
             ",\"fn\":" + std::to_string(r.matrix.fn) + ",\"fp\":" + std::to_string(r.matrix.fp) +
             ",\"tn\":" + std::to_string(r.matrix.tn) + "}";
      out += ",\"flags\":[";
      for (std::size_t f = 0; f < r.flags.size(); ++f) {
        if (f) out += ",";
        out += "\"" + r.flags[f] + "\"";
      }
      out += "]}";
    }
    out += "\n]\n";
    return out;
  }
  // aligned text table
  std::size_t mw = 5, dw = 7;
  for (const auto& r : reports) {
    mw = std::max(mw, r.model_name.size());
    dw = std::max(dw, r.dataset_name.size());
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %-*s  %8s  %10s  %8s\n", static_cast<int>(mw), "Model",
                static_cast<int>(dw), "Dataset", "Recall", "Recall_avg", "F1_avg");
  out = buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%-*s  %-*s  %8s  %10s  %8s\n", static_cast<int>(mw),
                  r.model_name.c_str(), static_cast<int>(dw), r.dataset_name.c_str(),
                  pct(r.recall_off).c_str(), pct(r.recall_macro).c_str(),
                  pct(r.f1_macro).c_str());
    out += buf;
    for (const auto& f : r.flags) out += "  ! " + f + "\n";
  }
  return out;
}

}  // namespace lingmine
