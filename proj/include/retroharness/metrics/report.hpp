//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "retroharness/metrics/score.hpp"
#include "retroharness/reaction/sampling.hpp"
#include "retroharness/util/csv.hpp"
#include "retroharness/util/text.hpp"

namespace rh {

inline constexpr const char *kMiscellaneous = "Miscellaneous";

struct PositionRow {
  std::string record_id;
  std::string name_gt;
  std::string class_gt;
  PositionScore score;
  std::string failure_class;  // empty unless score.failed
};

struct TransitionRow {
  std::string record_id;
  std::string name_gt;
  std::string class_gt;
  TransitionScore score;
  std::string failure_class;
  int example_count = 0;
};

/// Ground truth on rows, prediction on columns.
struct ConfusionMatrix {
  std::map<std::string, std::map<std::string, int>> counts;

  void add(const std::string &gt, const std::string &pred) { ++counts[gt][pred]; }

  int total() const {
    int n = 0;
    for (const auto &[gt, row]: counts)
      for (const auto &[pred, c]: row) n += c;
    return n;
  }

  /// Square CSV over the union of labels, sorted.
  std::string to_csv() const {
    std::set<std::string> labels;
    for (const auto &[gt, row]: counts) {
      labels.insert(gt);
      for (const auto &[pred, c]: row) labels.insert(pred);
    }
    std::ostringstream out;
    out << "ground_truth\\predicted";
    for (const auto &l: labels) out << ',' << csv_escape(l);
    out << '\n';
    for (const auto &gt: labels) {
      out << csv_escape(gt);
      const auto it = counts.find(gt);
      for (const auto &pred: labels) {
        int c = 0;
        if (it != counts.end())
          if (const auto jt = it->second.find(pred); jt != it->second.end()) c = jt->second;
        out << ',' << c;
      }
      out << '\n';
    }
    return out.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto &[gt, row]: counts)
      for (const auto &[pred, c]: row) j[gt][pred] = c;
    return j;
  }
};

inline double percent(long count, long n) {
  return n == 0 ? 0.0 : round2(100.0 * static_cast<double>(count) / static_cast<double>(n));
}

struct PositionReport {
  int examples = 0;
  double partial_match = 0;
  double exact_match = 0;
  double reaction_accuracy = 0;                     // over all examples
  double reaction_accuracy_given_partial = 0;       // over partial-match examples
  double reaction_accuracy_in_ontology = 0;         // in-ontology candidates only
  double reaction_accuracy_in_ontology_given_partial = 0;
  double mean_best_jaccard = 0;
  long total_predictions = 0;
  int failed_predictions = 0;
  double avg_number_of_predictions = 0;             // over non-failed examples
  std::map<std::string, int> failure_classes;
  ConfusionMatrix confusion_class;
  ConfusionMatrix confusion_name;
};

/// Percentages are over all examples, failed ones counting as misses.
inline PositionReport aggregate_position(const std::vector<PositionRow> &rows,
                                         std::string_view unclassified_label = kDefaultUnclassifiedLabel) {
  if (rows.empty()) throw std::invalid_argument("no rows to aggregate");
  PositionReport r;
  r.examples = static_cast<int>(rows.size());
  long partial = 0, exact = 0, rx = 0, rx_onto = 0, scored = 0;
  double jac = 0;
  for (const auto &row: rows) {
    const auto &s = row.score;
    partial += s.partial_match;
    exact += s.exact_match;
    rx += s.reaction_match.value_or(false);
    rx_onto += s.reaction_match_in_ontology.value_or(false);
    jac += s.best_jaccard;
    if (s.failed) {
      ++r.failed_predictions;
      ++r.failure_classes[row.failure_class.empty() ? "unknown" : row.failure_class];
    } else {
      ++scored;
      r.total_predictions += s.n_predictions;
    }
    if (s.partial_match && s.predicted_name) {
      const bool misc = row.name_gt.empty() || normalize_name(row.name_gt) == normalize_name(unclassified_label);
      r.confusion_name.add(misc ? kMiscellaneous : row.name_gt, *s.predicted_name);
      r.confusion_class.add(misc || row.class_gt.empty() ? kMiscellaneous : row.class_gt,
                            s.predicted_class && !s.predicted_class->empty() ? *s.predicted_class
                                                                             : kMiscellaneous);
    }
  }
  r.partial_match = percent(partial, r.examples);
  r.exact_match = percent(exact, r.examples);
  r.reaction_accuracy = percent(rx, r.examples);
  r.reaction_accuracy_given_partial = percent(rx, partial);
  r.reaction_accuracy_in_ontology = percent(rx_onto, r.examples);
  r.reaction_accuracy_in_ontology_given_partial = percent(rx_onto, partial);
  r.mean_best_jaccard = round2(100.0 * jac / r.examples) / 100.0;
  r.avg_number_of_predictions =
      scored == 0 ? 0.0 : round2(static_cast<double>(r.total_predictions) / static_cast<double>(scored));
  return r;
}

struct TransitionReport {
  int examples = 0;
  double template_accuracy = 0;
  double template_accuracy_gt_denominator = 0;
  double reactant_accuracy = 0;
  double combined_accuracy = 0;
  long total_predictions = 0;
  int failed_predictions = 0;
  double avg_number_of_predictions = 0;
  int empty_libraries = 0;
  std::map<std::string, int> failure_classes;
};

inline TransitionReport aggregate_transition(const std::vector<TransitionRow> &rows) {
  if (rows.empty()) throw std::invalid_argument("no rows to aggregate");
  TransitionReport r;
  r.examples = static_cast<int>(rows.size());
  long tmpl = 0, tmpl_gt = 0, reac = 0, comb = 0, scored = 0;
  for (const auto &row: rows) {
    const auto &s = row.score;
    tmpl += s.template_acc;
    tmpl_gt += s.template_acc_gt_denominator;
    reac += s.reactant_acc;
    comb += s.combined_acc;
    r.empty_libraries += row.example_count == 0;
    if (s.failed) {
      ++r.failed_predictions;
      ++r.failure_classes[row.failure_class.empty() ? "unknown" : row.failure_class];
    } else {
      ++scored;
      r.total_predictions += s.n_predictions;
    }
  }
  r.template_accuracy = percent(tmpl, r.examples);
  r.template_accuracy_gt_denominator = percent(tmpl_gt, r.examples);
  r.reactant_accuracy = percent(reac, r.examples);
  r.combined_accuracy = percent(comb, r.examples);
  r.avg_number_of_predictions =
      scored == 0 ? 0.0 : round2(static_cast<double>(r.total_predictions) / static_cast<double>(scored));
  return r;
}

inline nlohmann::ordered_json report_to_json(const PositionReport &r) {
  nlohmann::ordered_json j;
  j["arm"] = "position";
  j["examples"] = r.examples;
  j["partial_match"] = r.partial_match;
  j["exact_match"] = r.exact_match;
  j["reaction_accuracy"] = r.reaction_accuracy;
  j["reaction_accuracy_given_partial"] = r.reaction_accuracy_given_partial;
  j["reaction_accuracy_in_ontology"] = r.reaction_accuracy_in_ontology;
  j["reaction_accuracy_in_ontology_given_partial"] = r.reaction_accuracy_in_ontology_given_partial;
  j["mean_best_jaccard"] = r.mean_best_jaccard;
  j["total_predictions"] = r.total_predictions;
  j["failed_predictions"] = r.failed_predictions;
  j["avg_number_of_predictions"] = r.avg_number_of_predictions;
  j["failure_classes"] = r.failure_classes;
  j["confusion_class"] = r.confusion_class.to_json();
  j["confusion_name"] = r.confusion_name.to_json();
  return j;
}

inline nlohmann::ordered_json report_to_json(const TransitionReport &r) {
  nlohmann::ordered_json j;
  j["arm"] = "transition";
  j["examples"] = r.examples;
  j["template_accuracy"] = r.template_accuracy;
  j["template_accuracy_gt_denominator"] = r.template_accuracy_gt_denominator;
  j["reactant_accuracy"] = r.reactant_accuracy;
  j["combined_accuracy"] = r.combined_accuracy;
  j["total_predictions"] = r.total_predictions;
  j["failed_predictions"] = r.failed_predictions;
  j["avg_number_of_predictions"] = r.avg_number_of_predictions;
  j["empty_example_libraries"] = r.empty_libraries;
  j["failure_classes"] = r.failure_classes;
  return j;
}

inline std::string bool_cell(bool b) { return b ? "1" : "0"; }

inline std::string optional_bool_cell(const std::optional<bool> &b) {
  return b ? bool_cell(*b) : "";
}

inline std::string rows_to_csv(const std::vector<PositionRow> &rows) {
  std::ostringstream out;
  out << "record_id,reaction_name,reaction_class,failed,failure_class,n_predictions,"
         "partial_match,best_jaccard,exact_match,reaction_match,reaction_match_in_ontology,"
         "predicted_name,predicted_class\n";
  for (const auto &r: rows) {
    const auto &s = r.score;
    char jac[32];
    std::snprintf(jac, sizeof(jac), "%.4f", s.best_jaccard);
    out << csv_escape(r.record_id) << ',' << csv_escape(r.name_gt) << ',' << csv_escape(r.class_gt)
        << ',' << bool_cell(s.failed) << ',' << r.failure_class << ',' << s.n_predictions << ','
        << bool_cell(s.partial_match) << ',' << jac << ',' << bool_cell(s.exact_match) << ','
        << optional_bool_cell(s.reaction_match) << ',' << optional_bool_cell(s.reaction_match_in_ontology)
        << ',' << csv_escape(s.predicted_name.value_or("")) << ','
        << csv_escape(s.predicted_class.value_or("")) << '\n';
  }
  return out.str();
}

inline std::string rows_to_csv(const std::vector<TransitionRow> &rows) {
  std::ostringstream out;
  out << "record_id,reaction_name,reaction_class,failed,failure_class,n_predictions,example_count,"
         "template_acc,template_acc_gt_denominator,reactant_acc,combined_acc\n";
  for (const auto &r: rows) {
    const auto &s = r.score;
    out << csv_escape(r.record_id) << ',' << csv_escape(r.name_gt) << ',' << csv_escape(r.class_gt)
        << ',' << bool_cell(s.failed) << ',' << r.failure_class << ',' << s.n_predictions << ','
        << r.example_count << ',' << bool_cell(s.template_acc) << ','
        << bool_cell(s.template_acc_gt_denominator) << ',' << bool_cell(s.reactant_acc) << ','
        << bool_cell(s.combined_acc) << '\n';
  }
  return out.str();
}

inline std::string summary_text(const PositionReport &r) {
  std::ostringstream out;
  out << "Position evaluation (" << r.examples << " examples)\n"
      << "  Partial match (%)                  " << fixed2(r.partial_match) << '\n'
      << "  Exact match (%)                    " << fixed2(r.exact_match) << '\n'
      << "  Reaction accuracy (%)              " << fixed2(r.reaction_accuracy) << '\n'
      << "  Reaction accuracy | partial (%)    " << fixed2(r.reaction_accuracy_given_partial) << '\n'
      << "  Reaction accuracy, ontology (%)    " << fixed2(r.reaction_accuracy_in_ontology) << '\n'
      << "  Mean best Jaccard                  " << fixed2(r.mean_best_jaccard) << '\n'
      << "  Total predictions                  " << r.total_predictions << '\n'
      << "  Failed predictions                 " << r.failed_predictions << '\n'
      << "  Avg. number of predictions         " << fixed2(r.avg_number_of_predictions) << '\n';
  return out.str();
}

inline std::string summary_text(const TransitionReport &r) {
  std::ostringstream out;
  out << "Transition evaluation (" << r.examples << " examples)\n"
      << "  Template accuracy (%)              " << fixed2(r.template_accuracy) << '\n'
      << "  Template accuracy, r_gt share (%)  " << fixed2(r.template_accuracy_gt_denominator) << '\n'
      << "  Reactant accuracy (%)              " << fixed2(r.reactant_accuracy) << '\n'
      << "  Combined accuracy (%)              " << fixed2(r.combined_accuracy) << '\n'
      << "  Total predictions                  " << r.total_predictions << '\n'
      << "  Failed predictions                 " << r.failed_predictions << '\n'
      << "  Avg. number of predictions         " << fixed2(r.avg_number_of_predictions) << '\n'
      << "  Empty example libraries            " << r.empty_libraries << '\n';
  return out.str();
}

}  // namespace rh
