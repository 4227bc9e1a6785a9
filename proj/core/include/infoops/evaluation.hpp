#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "infoops/corpus.hpp"
#include "infoops/textualize.hpp"

namespace infoops {

struct Confusion {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Driver is the positive class; zero denominators yield 0.
Confusion confusion_metrics(const std::vector<Label>& predictions,
                            const std::vector<Label>& labels);

// Mann-Whitney AUC: fraction of driver/organic pairs ordered correctly, ties
// counted as 1/2. Computed via average ranks; the O(n^2) pair count lives in
// the tests as an independent oracle.
double roc_auc(const std::vector<double>& scores, const std::vector<Label>& labels);

struct MetricRow {
  std::string campaign;
  std::string method;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  double parse_failure_rate = 0.0;
};

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // population std
};

struct AggregateRow {
  std::string method;
  Stat precision, recall, f1, auc, parse_failure_rate;
};

std::vector<AggregateRow> aggregate_campaigns(const std::vector<MetricRow>& rows);

struct AblationConfig {
  std::string name;
  std::set<TextKind> features;
};

// Exactly {all, -interaction, -centrality, -metadata, -content}.
std::vector<AblationConfig> ablation_grid();

enum class ReportFormat { csv, json, svg };

// Writes <base>.csv/.json/.svg depending on the requested formats.
void emit_report(const std::vector<MetricRow>& rows,
                 const std::vector<AggregateRow>& aggregates,
                 const std::filesystem::path& base,
                 const std::set<ReportFormat>& formats);

}  // namespace infoops
