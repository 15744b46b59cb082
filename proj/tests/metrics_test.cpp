//
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "retroharness/chem/smiles.hpp"
#include "retroharness/metrics/report.hpp"
#include "support/graph_oracles.hpp"

namespace rh {
namespace {

AtomMapSet set_of(std::initializer_list<int> v) {
  AtomMapSet s;
  for (int x: v) s.insert(x);
  return s;
}

DisconnectionCandidate cand(AtomMapSet s, std::string name, int priority = 1, bool onto = true,
                            std::string cls = "Acylation") {
  DisconnectionCandidate c;
  c.s = std::move(s);
  c.reaction_name = std::move(name);
  c.reaction_class = std::move(cls);
  c.in_ontology = onto;
  c.importance = 3;
  c.priority = priority;
  return c;
}

TransitionPrediction pred(std::vector<std::string> smiles, bool valid, bool tmpl) {
  TransitionPrediction p;
  for (const auto &s: smiles) p.reactants.push_back(parse_smiles(s));
  p.reactant_smiles = std::move(smiles);
  p.is_valid = valid;
  p.is_template = tmpl;
  return p;
}

std::vector<Molecule> mols(std::vector<std::string> smiles) {
  std::vector<Molecule> out;
  for (const auto &s: smiles) out.push_back(parse_smiles(s));
  return out;
}

// Position worked examples.

TEST(ScorePosition, Identity) {
  const auto s = score_position({cand(set_of({2, 4}), "Amide coupling")}, set_of({2, 4}), "Amide coupling");
  EXPECT_TRUE(s.partial_match);
  EXPECT_DOUBLE_EQ(s.best_jaccard, 1.0);
  EXPECT_TRUE(s.exact_match);
  EXPECT_EQ(s.reaction_match, true);
  EXPECT_FALSE(s.failed);
}

TEST(ScorePosition, HalfOverlap) {
  const auto s = score_position({cand(set_of({1}), "x")}, set_of({1, 2}), "y");
  EXPECT_DOUBLE_EQ(s.best_jaccard, 0.5);
  EXPECT_TRUE(s.partial_match);
  EXPECT_FALSE(s.exact_match);
  EXPECT_EQ(s.reaction_match, false);
}

TEST(ScorePosition, OnlyBestJaccardCandidatesAreEligible) {
  const auto s = score_position({cand(set_of({1, 2}), "Wrong name"), cand(set_of({1}), "Right name")},
                                set_of({1, 2}), "Right name");
  EXPECT_DOUBLE_EQ(s.best_jaccard, 1.0);
  EXPECT_TRUE(s.exact_match);
  EXPECT_EQ(s.reaction_match, false);
}

TEST(ScorePosition, AllTiesAtTheMaximumAreEligible) {
  const auto s = score_position({cand(set_of({1, 3}), "Wrong"), cand(set_of({2, 4}), "  right  NAME")},
                                set_of({1, 2}), "Right name");
  EXPECT_DOUBLE_EQ(s.best_jaccard, 1.0 / 3.0);
  EXPECT_EQ(s.reaction_match, true);
}

TEST(ScorePosition, NoOverlapAndNoCandidates) {
  auto s = score_position({cand(set_of({7}), "x")}, set_of({1, 2}), "x");
  EXPECT_FALSE(s.partial_match);
  EXPECT_FALSE(s.reaction_match.has_value());
  EXPECT_DOUBLE_EQ(s.best_jaccard, 0.0);
  s = score_position({}, set_of({1}), "x");
  EXPECT_TRUE(s.failed);
  EXPECT_EQ(s.n_predictions, 0);
  EXPECT_DOUBLE_EQ(s.best_jaccard, 0.0);
  EXPECT_THROW(score_position({}, AtomMapSet{}, "x"), std::invalid_argument);
}

TEST(ScorePosition, InOntologyViewAndRepresentative) {
  const auto s = score_position({cand(set_of({1, 2}), "Invented", 1, false),
                                 cand(set_of({1, 2}), "Amide coupling", 3, true, "Acylation"),
                                 cand(set_of({1, 2}), "Suzuki coupling", 2, true, "C-C Coupling")},
                                set_of({1, 2}), "Invented");
  EXPECT_EQ(s.reaction_match, true);
  EXPECT_EQ(s.reaction_match_in_ontology, false);
  EXPECT_EQ(s.predicted_name, "Suzuki coupling");
  EXPECT_EQ(s.predicted_class, "C-C Coupling");
}

// Jaccard property suite against plain set arithmetic.

double oracle_jaccard(const std::set<int> &a, const std::set<int> &b) {
  std::vector<int> i, u;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(i));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u.empty() ? 0.0 : static_cast<double>(i.size()) / static_cast<double>(u.size());
}

TEST(Jaccard, MatchesSetArithmeticOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::set<int> a, b;
    AtomMapSet sa, sb;
    const int na = 1 + static_cast<int>(rng() % 8), nb = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < na; ++k) {
      const int v = 1 + static_cast<int>(rng() % 12);
      a.insert(v);
      sa.insert(v);
    }
    for (int k = 0; k < nb; ++k) {
      const int v = 1 + static_cast<int>(rng() % 12);
      b.insert(v);
      sb.insert(v);
    }
    const double j = jaccard(sa, sb);
    EXPECT_DOUBLE_EQ(j, oracle_jaccard(a, b));
    EXPECT_GE(j, 0.0);
    EXPECT_LE(j, 1.0);
    EXPECT_DOUBLE_EQ(j, jaccard(sb, sa));
    EXPECT_DOUBLE_EQ(jaccard(sa, sa), 1.0);

    // Adding a fresh shared element never lowers the similarity.
    AtomMapSet ea = sa, eb = sb;
    ea.insert(100);
    eb.insert(100);
    EXPECT_GE(jaccard(ea, eb), j);

    const auto s = score_position({cand(sa, "n")}, sb, "n");
    EXPECT_DOUBLE_EQ(s.best_jaccard, j);
    EXPECT_EQ(s.partial_match, j > 0.0);
    EXPECT_TRUE(!s.exact_match || s.partial_match);
  }
}

// Transition worked examples.

TEST(ScoreTransition, ReactantMultisetIsOrderInsensitive) {
  const auto s = score_transition({pred({"CC(=O)O", "CN"}, true, false)},
                                  mols({"[CH3:1][NH2:2]", "[CH3:3][C:4](=[O:5])[OH:6]"}));
  EXPECT_TRUE(s.reactant_acc);
  EXPECT_TRUE(s.combined_acc);
  EXPECT_FALSE(s.template_acc);
}

TEST(ScoreTransition, DotJoinedReactantsCountAsComponents) {
  EXPECT_TRUE(score_transition({pred({"CN.OC(C)=O"}, true, false)}, mols({"CC(=O)O", "CN"})).reactant_acc);
  EXPECT_FALSE(score_transition({pred({"CC(=O)O"}, true, false)}, mols({"CC(=O)O", "CN"})).reactant_acc);
  EXPECT_FALSE(
      score_transition({pred({"CC(=O)O", "CN", "CN"}, true, false)}, mols({"CC(=O)O", "CN"})).reactant_acc);
}

TEST(ScoreTransition, InvalidPredictionsAreIneligible) {
  const auto s = score_transition({pred({"COC(=O)CC"}, false, false),
                                   pred({"[*]O[C:3](=[O:4])[CH2:5][CH3:6]"}, false, true)},
                                  mols({"CO[C:3](=[O:4])[CH2:5][CH3:6]"}));
  EXPECT_FALSE(s.reactant_acc);
  EXPECT_FALSE(s.template_acc);
  EXPECT_FALSE(s.combined_acc);
  EXPECT_FALSE(s.failed);
}

TEST(ScoreTransition, StereoOption) {
  const auto gt = mols({"C[C@H](N)O"});
  EXPECT_FALSE(score_transition({pred({"C[C@@H](N)O"}, true, false)}, gt).reactant_acc);
  EXPECT_TRUE(score_transition({pred({"C[C@@H](N)O"}, true, false)}, gt, {true}).reactant_acc);
  EXPECT_TRUE(score_transition({pred({"C[C@H](N)O"}, true, false)}, gt).reactant_acc);
}

// Methyl propanoate with four mapped atoms. The template's non-wildcard
// heavy atoms are O, C:3, O:4, C:5, C:6; four of five share a map, so the
// share is 0.8. Over the six heavy atoms of the ester it is 4/6.
const char *kEster = "CO[C:3](=[O:4])[CH2:5][CH3:6]";
const char *kEsterTemplate = "[*]O[C:3](=[O:4])[CH2:5][CH3:6]";

TEST(ScoreTransition, WildcardTemplateCoversEster) {
  EXPECT_DOUBLE_EQ(atom_share(parse_smiles(kEsterTemplate), parse_smiles(kEster)), 0.8);
  EXPECT_DOUBLE_EQ(atom_share(parse_smiles(kEsterTemplate), parse_smiles(kEster), true), 4.0 / 6.0);
  const auto s = score_transition({pred({kEsterTemplate}, true, true)}, mols({kEster}));
  EXPECT_TRUE(s.template_acc);
  EXPECT_FALSE(s.template_acc_gt_denominator);
  EXPECT_FALSE(s.reactant_acc);
  EXPECT_TRUE(s.combined_acc);
  ASSERT_TRUE(s.certificate);
  ASSERT_EQ(s.certificate->pairs.size(), 1u);
  EXPECT_DOUBLE_EQ(s.certificate->pairs[0].share, 0.8);
}

TEST(ScoreTransition, TemplateThresholdAndEmbedding) {
  // 3 of 4 non-wildcard atoms mapped: exactly at the threshold.
  EXPECT_TRUE(score_transition({pred({"[*]O[C:3](=[O:4])[CH2:5]"}, true, true)}, mols({kEster})).template_acc);
  // 3 of 5: below.
  EXPECT_FALSE(
      score_transition({pred({"[*]OC(=O)[CH2:5][CH3:6]"}, true, true)}, mols({"COC(=O)[CH2:5][CH3:6]"}))
          .template_acc);
  // Enough share but the pattern does not embed (N where the ester has O).
  EXPECT_FALSE(score_transition({pred({"[*]N[C:3](=[O:4])[CH2:5][CH3:6]"}, true, true)}, mols({kEster}))
                   .template_acc);
  // Element lists are honored.
  const char *halide = "[Cl,Br][C:3](=[O:4])[CH2:5][CH3:6]";
  EXPECT_TRUE(score_transition({pred({halide}, true, true)}, mols({"Cl[C:3](=[O:4])[CH2:5][CH3:6]"}))
                  .template_acc);
  EXPECT_FALSE(score_transition({pred({halide}, true, true)}, mols({"I[C:3](=[O:4])[CH2:5][CH3:6]"}))
                   .template_acc);
  // Not flagged as a template: not eligible.
  EXPECT_FALSE(score_transition({pred({kEsterTemplate}, true, false)}, mols({kEster})).template_acc);
}

TEST(ScoreTransition, EveryGroundTruthReactantNeedsItsOwnTemplate) {
  const auto gt = mols({kEster, "[NH2:7][CH3:8]"});
  EXPECT_FALSE(score_transition({pred({kEsterTemplate}, true, true)}, gt).template_acc);
  const auto s = score_transition({pred({kEsterTemplate, "[NH2:7][CH3:8]"}, true, true)}, gt);
  EXPECT_TRUE(s.template_acc);
  ASSERT_EQ(s.certificate->pairs.size(), 2u);
  EXPECT_EQ(s.certificate->pairs[1].template_index, 1);
}

TEST(ScoreTransition, FailedWhenNoPredictions) {
  const auto s = score_transition({}, mols({"CC"}));
  EXPECT_TRUE(s.failed);
  EXPECT_FALSE(s.combined_acc);
  EXPECT_THROW(score_transition({}, {}), std::invalid_argument);
}

// Independent re-check of a certificate: injective embedding that respects
// atoms and bonds, and a share recomputed by counting maps directly.
void verify_certificate(const TransitionScore &s, const std::vector<TransitionPrediction> &preds,
                        const std::vector<Molecule> &gt) {
  ASSERT_TRUE(s.certificate);
  const auto tmpl = internal::components_of(preds[s.certificate->prediction].reactants);
  const auto gts = internal::components_of(gt);
  std::set<int> used_templates;
  ASSERT_EQ(s.certificate->pairs.size(), gts.size());
  for (const auto &pair: s.certificate->pairs) {
    EXPECT_TRUE(used_templates.insert(pair.template_index).second);
    const auto &t = tmpl[pair.template_index];
    const auto &g = gts[pair.gt_index];
    ASSERT_EQ(static_cast<int>(pair.embedding.size()), t.num_atoms());
    std::set<int> image(pair.embedding.begin(), pair.embedding.end());
    EXPECT_EQ(static_cast<int>(image.size()), t.num_atoms());
    for (int a = 0; a < t.num_atoms(); ++a) {
      const auto &pa = t.atom(a);
      const auto &ta = g.atom(pair.embedding[a]);
      if (pa.is_wildcard()) continue;
      if (pa.is_element_list()) {
        EXPECT_TRUE(std::any_of(pa.element_list.begin(), pa.element_list.end(),
                                [&](const ListedElement &e) { return e.symbol == ta.element; }));
        continue;
      }
      EXPECT_EQ(pa.element, ta.element);
      EXPECT_EQ(pa.aromatic, ta.aromatic);
    }
    for (const auto &b: t.bonds()) {
      const auto tb = g.bond_between(pair.embedding[b.begin], pair.embedding[b.end]);
      ASSERT_TRUE(tb.has_value());
      EXPECT_EQ(g.bond(*tb).kind, b.kind);
    }
    int shared = 0, denom = 0;
    std::set<int> gt_maps;
    for (const auto &a: g.atoms())
      if (a.atom_map) gt_maps.insert(*a.atom_map);
    for (const auto &a: t.atoms()) {
      if (a.is_wildcard() || (a.kind == AtomKind::kElement && a.element == "H")) continue;
      ++denom;
      if (a.atom_map && gt_maps.count(*a.atom_map)) ++shared;
    }
    EXPECT_GE(4 * shared, 3 * denom);
    EXPECT_DOUBLE_EQ(pair.share, static_cast<double>(shared) / denom);
  }
}

TEST(ScoreTransition, TemplateMatchSoundnessOnRandomTemplates) {
  std::mt19937_64 rng(99);
  testing::GeneratorOptions opts;
  opts.min_atoms = 3;
  opts.max_atoms = 7;
  opts.query_atoms = false;
  opts.maps = false;
  opts.stereo = false;
  opts.isotopes = false;
  opts.charges = false;
  opts.disconnected = false;
  opts.narrow_alphabet = true;
  int positives = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Molecule base = testing::random_molecule(rng, opts);
    std::vector<Atom> gt_atoms = base.atoms();
    for (int i = 0; i < base.num_atoms(); ++i) gt_atoms[i].atom_map = i + 1;
    const Molecule gt(gt_atoms, base.bonds());

    // Template: the same graph, some atoms unmapped or turned into
    // wildcards, occasionally one bond order flipped.
    std::vector<Atom> t_atoms = gt_atoms;
    std::vector<Bond> t_bonds = base.bonds();
    for (auto &a: t_atoms) {
      const auto r = rng() % 10;
      if (r == 0) {
        a = Atom{};
        a.kind = AtomKind::kWildcard;
      } else if (r == 1) {
        a.atom_map.reset();
      }
    }
    if (!t_bonds.empty() && rng() % 5 == 0) {
      auto &b = t_bonds[rng() % t_bonds.size()];
      b.kind = b.kind == BondKind::kSingle ? BondKind::kDouble : BondKind::kSingle;
    }
    const Molecule t(t_atoms, t_bonds);
    TransitionPrediction p;
    p.reactants = {t};
    p.is_valid = true;
    p.is_template = true;
    const auto s = score_transition({p}, {gt});

    int shared = 0, denom = 0;
    for (const auto &a: t_atoms) {
      if (a.is_wildcard()) continue;
      ++denom;
      shared += a.atom_map.has_value();
    }
    const bool expected = denom > 0 && 4 * shared >= 3 * denom && testing::brute_force_substructure(t, gt);
    EXPECT_EQ(s.template_acc, expected) << trial;
    if (s.template_acc) {
      ++positives;
      verify_certificate(s, {p}, {gt});
    }
  }
  EXPECT_GT(positives, 50);
}

// Aggregation.

PositionRow position_row(bool partial, bool failed = false, int n = 2) {
  PositionRow r;
  r.record_id = "r";
  r.name_gt = "Amide coupling";
  r.class_gt = "Acylation";
  r.score.partial_match = partial;
  r.score.failed = failed;
  r.score.n_predictions = failed ? 0 : n;
  if (failed) r.failure_class = "no_json";
  return r;
}

TEST(Aggregate, PartialMatchPercentage) {
  const auto rep = aggregate_position(
      {position_row(true), position_row(true), position_row(false), position_row(true)});
  EXPECT_DOUBLE_EQ(rep.partial_match, 75.00);
  EXPECT_EQ(fixed2(rep.partial_match), "75.00");
}

TEST(Aggregate, FailedRowsAndAverageDenominator) {
  const auto rep = aggregate_position({position_row(true, false, 1), position_row(true, false, 2),
                                       position_row(true, false, 3), position_row(false, false, 6),
                                       position_row(false, true)});
  EXPECT_EQ(rep.failed_predictions, 1);
  EXPECT_EQ(rep.total_predictions, 12);
  EXPECT_DOUBLE_EQ(rep.avg_number_of_predictions, 3.0);
  EXPECT_DOUBLE_EQ(rep.partial_match, 60.0);
  EXPECT_EQ(rep.failure_classes.at("no_json"), 1);
  EXPECT_THROW(aggregate_position({}), std::invalid_argument);
}

TEST(Aggregate, ReactionAccuracyDenominators) {
  auto a = position_row(true);
  a.score.reaction_match = true;
  auto b = position_row(true);
  b.score.reaction_match = false;
  const auto rep = aggregate_position({a, b, position_row(false), position_row(false)});
  EXPECT_DOUBLE_EQ(rep.reaction_accuracy, 25.0);
  EXPECT_DOUBLE_EQ(rep.reaction_accuracy_given_partial, 50.0);
}

TEST(Aggregate, ConfusionOnlyFromPartialMatchesWithInOntologyPrediction) {
  auto hit = position_row(true);
  hit.score.predicted_name = "Amide coupling";
  hit.score.predicted_class = "Acylation";
  auto miss = position_row(false);
  miss.score.predicted_name = "Suzuki coupling";
  auto out_of_onto = position_row(true);  // no representative
  auto misc = position_row(true);
  misc.name_gt = "OtherReaction";
  misc.class_gt = "Unassigned";
  misc.score.predicted_name = "Suzuki coupling";
  misc.score.predicted_class = "C-C Coupling";
  const auto rep = aggregate_position({hit, miss, out_of_onto, misc});
  EXPECT_EQ(rep.confusion_name.total(), 2);
  EXPECT_EQ(rep.confusion_name.counts.at("Amide coupling").at("Amide coupling"), 1);
  EXPECT_EQ(rep.confusion_name.counts.at("Miscellaneous").at("Suzuki coupling"), 1);
  EXPECT_EQ(rep.confusion_class.counts.at("Miscellaneous").at("C-C Coupling"), 1);
  const auto csv = rep.confusion_class.to_csv();
  EXPECT_EQ(csv,
            "ground_truth\\predicted,Acylation,C-C Coupling,Miscellaneous\n"
            "Acylation,1,0,0\n"
            "C-C Coupling,0,0,0\n"
            "Miscellaneous,0,1,0\n");
}

TEST(Aggregate, ScaleInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PositionRow> rows;
    std::vector<TransitionRow> trows;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      auto r = position_row(rng() % 2, rng() % 5 == 0, 1 + static_cast<int>(rng() % 4));
      if (r.score.partial_match) r.score.reaction_match = rng() % 2;
      r.score.exact_match = r.score.partial_match && rng() % 2;
      r.score.best_jaccard = r.score.exact_match ? 1.0 : (r.score.partial_match ? 0.5 : 0.0);
      rows.push_back(r);
      TransitionRow t;
      t.score.template_acc = rng() % 2;
      t.score.reactant_acc = rng() % 2;
      t.score.combined_acc = t.score.template_acc || t.score.reactant_acc;
      t.score.failed = rng() % 6 == 0;
      t.score.n_predictions = t.score.failed ? 0 : 1 + static_cast<int>(rng() % 5);
      trows.push_back(t);
    }
    auto doubled = rows;
    doubled.insert(doubled.end(), rows.begin(), rows.end());
    auto tdoubled = trows;
    tdoubled.insert(tdoubled.end(), trows.begin(), trows.end());

    const auto a = aggregate_position(rows), b = aggregate_position(doubled);
    EXPECT_DOUBLE_EQ(a.partial_match, b.partial_match);
    EXPECT_DOUBLE_EQ(a.exact_match, b.exact_match);
    EXPECT_DOUBLE_EQ(a.reaction_accuracy, b.reaction_accuracy);
    EXPECT_DOUBLE_EQ(a.reaction_accuracy_given_partial, b.reaction_accuracy_given_partial);
    EXPECT_DOUBLE_EQ(a.avg_number_of_predictions, b.avg_number_of_predictions);
    EXPECT_DOUBLE_EQ(a.mean_best_jaccard, b.mean_best_jaccard);
    const auto c = aggregate_transition(trows), d = aggregate_transition(tdoubled);
    EXPECT_DOUBLE_EQ(c.template_accuracy, d.template_accuracy);
    EXPECT_DOUBLE_EQ(c.reactant_accuracy, d.reactant_accuracy);
    EXPECT_DOUBLE_EQ(c.combined_accuracy, d.combined_accuracy);
    EXPECT_DOUBLE_EQ(c.avg_number_of_predictions, d.avg_number_of_predictions);

    // Boolean columns aggregate to the mean of their rows.
    long partial = 0;
    for (const auto &r: rows) partial += r.score.partial_match;
    EXPECT_DOUBLE_EQ(a.partial_match, round2(100.0 * partial / n));
    long comb = 0;
    for (const auto &t: trows) comb += t.score.combined_acc;
    EXPECT_DOUBLE_EQ(c.combined_accuracy, round2(100.0 * comb / n));
  }
}

TEST(Aggregate, CsvAndSummary) {
  auto r = position_row(true);
  r.record_id = "id,with,commas";
  r.score.best_jaccard = 2.0 / 3.0;
  const auto csv = rows_to_csv(std::vector<PositionRow>{r});
  EXPECT_NE(csv.find("\"id,with,commas\""), std::string::npos);
  EXPECT_NE(csv.find("0.6667"), std::string::npos);
  const auto text = summary_text(aggregate_position({r}));
  EXPECT_NE(text.find("Partial match (%)                  100.00"), std::string::npos);
}

}  // namespace
}  // namespace rh
