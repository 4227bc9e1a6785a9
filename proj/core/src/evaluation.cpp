#include "infoops/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "infoops/util.hpp"

namespace infoops {

using json = nlohmann::ordered_json;

Confusion confusion_metrics(const std::vector<Label>& predictions,
                            const std::vector<Label>& labels) {
  if (predictions.size() != labels.size())
    throw std::invalid_argument("confusion_metrics: length mismatch");
  int tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    bool pred = predictions[i] == Label::driver;
    bool truth = labels[i] == Label::driver;
    if (pred && truth) ++tp;
    if (pred && !truth) ++fp;
    if (!pred && truth) ++fn;
  }
  Confusion c;
  c.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  c.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  c.f1 = c.precision + c.recall > 0
             ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
             : 0.0;
  return c;
}

double roc_auc(const std::vector<double>& scores, const std::vector<Label>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: length mismatch");
  std::size_t n_pos = 0, n_neg = 0;
  for (Label l : labels) (l == Label::driver ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups, then the Mann-Whitney rank-sum statistic.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == Label::driver) rank_sum_pos += avg_rank;
    i = j;
  }
  double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<AggregateRow> aggregate_campaigns(const std::vector<MetricRow>& rows) {
  std::vector<std::string> methods;
  for (const auto& r : rows)
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);

  auto stat_of = [](const std::vector<double>& values) {
    Stat s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    for (double v : values) s.stddev += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(s.stddev / static_cast<double>(values.size()));
    return s;
  };

  std::vector<AggregateRow> out;
  for (const auto& method : methods) {
    std::vector<double> p, r, f, a, pf;
    for (const auto& row : rows) {
      if (row.method != method) continue;
      p.push_back(row.precision);
      r.push_back(row.recall);
      f.push_back(row.f1);
      a.push_back(row.auc);
      pf.push_back(row.parse_failure_rate);
    }
    AggregateRow agg;
    agg.method = method;
    agg.precision = stat_of(p);
    agg.recall = stat_of(r);
    agg.f1 = stat_of(f);
    agg.auc = stat_of(a);
    agg.parse_failure_rate = stat_of(pf);
    out.push_back(std::move(agg));
  }
  return out;
}

std::vector<AblationConfig> ablation_grid() {
  const std::set<TextKind> all{TextKind::interaction, TextKind::centrality,
                               TextKind::metadata, TextKind::content};
  std::vector<AblationConfig> grid;
  grid.push_back({"all", all});
  for (TextKind k : {TextKind::interaction, TextKind::centrality, TextKind::metadata,
                     TextKind::content}) {
    std::set<TextKind> features = all;
    features.erase(k);
    grid.push_back({"-" + to_string(k), features});
  }
  return grid;
}

namespace {

// Percent with 2 decimals, Table-style "mean±std".
std::string pm(const Stat& s) {
  return format_fixed(s.mean * 100.0, 2) + "±" + format_fixed(s.stddev * 100.0, 2);
}

void emit_csv(const std::vector<MetricRow>& rows, const std::vector<AggregateRow>& aggs,
              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "method,campaign,precision,recall,f1,auc,parse_failure_rate\n";
  for (const auto& r : rows) {
    out << r.method << ',' << r.campaign << ',' << format_fixed(r.precision, 6) << ','
        << format_fixed(r.recall, 6) << ',' << format_fixed(r.f1, 6) << ','
        << format_fixed(r.auc, 6) << ',' << format_fixed(r.parse_failure_rate, 6) << '\n';
  }
  for (const auto& a : aggs) {
    out << a.method << ",MEAN±STD," << pm(a.precision) << ',' << pm(a.recall) << ','
        << pm(a.f1) << ',' << pm(a.auc) << ',' << pm(a.parse_failure_rate) << '\n';
  }
}

void emit_json(const std::vector<MetricRow>& rows, const std::vector<AggregateRow>& aggs,
               const std::filesystem::path& path) {
  json doc;
  doc["campaigns"] = json::array();
  for (const auto& r : rows) {
    json j;
    j["method"] = r.method;
    j["campaign"] = r.campaign;
    j["precision"] = r.precision;
    j["recall"] = r.recall;
    j["f1"] = r.f1;
    j["auc"] = r.auc;
    j["parse_failure_rate"] = r.parse_failure_rate;
    doc["campaigns"].push_back(std::move(j));
  }
  doc["aggregates"] = json::array();
  for (const auto& a : aggs) {
    json j;
    j["method"] = a.method;
    for (auto [name, stat] :
         {std::pair<const char*, const Stat*>{"precision", &a.precision},
          {"recall", &a.recall},
          {"f1", &a.f1},
          {"auc", &a.auc},
          {"parse_failure_rate", &a.parse_failure_rate}}) {
      j[name] = {{"mean", stat->mean}, {"std", stat->stddev}};
    }
    doc["aggregates"].push_back(std::move(j));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                         "#edc948", "#b07aa1", "#ff9da7"};

void emit_svg(const std::vector<MetricRow>& rows, const std::filesystem::path& path) {
  std::vector<std::string> methods, campaigns;
  for (const auto& r : rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);
    if (std::find(campaigns.begin(), campaigns.end(), r.campaign) == campaigns.end())
      campaigns.push_back(r.campaign);
  }
  auto value_of = [&](const std::string& method, const std::string& campaign,
                      int metric) -> double {
    for (const auto& r : rows) {
      if (r.method != method || r.campaign != campaign) continue;
      switch (metric) {
        case 0: return r.precision;
        case 1: return r.recall;
        case 2: return r.f1;
        default: return r.auc;
      }
    }
    return 0.0;
  };
  const char* metric_names[] = {"Precision", "Recall", "F1", "AUC"};

  const double bar_w = 14.0, gap = 6.0, group_gap = 24.0;
  const double group_w = methods.size() * bar_w + (methods.size() - 1) * gap;
  const double panel_w = 60.0 + campaigns.size() * (group_w + group_gap) + 160.0;
  const double panel_h = 180.0;
  const double chart_h = 120.0;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(panel_w, 0)
      << "\" height=\"" << format_fixed(panel_h * 4, 0) << "\" font-family=\"sans-serif\">\n";
  for (int m = 0; m < 4; ++m) {
    double y0 = m * panel_h;
    out << "<text x=\"10\" y=\"" << format_fixed(y0 + 18, 1) << "\" font-size=\"13\">"
        << metric_names[m] << "</text>\n";
    double base = y0 + 30 + chart_h;
    out << "<line x1=\"50\" y1=\"" << format_fixed(base, 1) << "\" x2=\""
        << format_fixed(panel_w - 150, 1) << "\" y2=\"" << format_fixed(base, 1)
        << "\" stroke=\"#333\"/>\n";
    for (std::size_t c = 0; c < campaigns.size(); ++c) {
      double gx = 60.0 + c * (group_w + group_gap);
      out << "<g class=\"campaign-group\" data-campaign=\"" << campaigns[c] << "\">\n";
      for (std::size_t i = 0; i < methods.size(); ++i) {
        double v = value_of(methods[i], campaigns[c], m);
        double h = v * chart_h;
        out << "<rect x=\"" << format_fixed(gx + i * (bar_w + gap), 1) << "\" y=\""
            << format_fixed(base - h, 1) << "\" width=\"" << format_fixed(bar_w, 1)
            << "\" height=\"" << format_fixed(h, 1) << "\" fill=\""
            << kPalette[i % 8] << "\"/>\n";
      }
      out << "</g>\n";
      out << "<text x=\"" << format_fixed(gx, 1) << "\" y=\"" << format_fixed(base + 14, 1)
          << "\" font-size=\"10\">" << campaigns[c] << "</text>\n";
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
      double ly = y0 + 36 + i * 14;
      out << "<rect x=\"" << format_fixed(panel_w - 140, 1) << "\" y=\""
          << format_fixed(ly - 9, 1) << "\" width=\"10\" height=\"10\" fill=\""
          << kPalette[i % 8] << "\"/>\n";
      out << "<text x=\"" << format_fixed(panel_w - 126, 1) << "\" y=\""
          << format_fixed(ly, 1) << "\" font-size=\"10\">" << methods[i] << "</text>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace

void emit_report(const std::vector<MetricRow>& rows,
                 const std::vector<AggregateRow>& aggregates,
                 const std::filesystem::path& base,
                 const std::set<ReportFormat>& formats) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
  if (formats.count(ReportFormat::csv)) {
    auto p = base;
    emit_csv(rows, aggregates, p.replace_extension(".csv"));
  }
  if (formats.count(ReportFormat::json)) {
    auto p = base;
    emit_json(rows, aggregates, p.replace_extension(".json"));
  }
  if (formats.count(ReportFormat::svg)) {
    auto p = base;
    emit_svg(rows, p.replace_extension(".svg"));
  }
}

}  // namespace infoops
