//
// SPDX-License-Identifier: Apache-2.0
//
// Walks one reaction through the harness without a model: label it, render
// both prompts, then parse and score a hand-written reply for each stage.
//

#include <iostream>

#include "retroharness/metrics/score.hpp"
#include "retroharness/parse/position.hpp"
#include "retroharness/parse/transition.hpp"
#include "retroharness/prompt/render.hpp"
#include "retroharness/reaction/label.hpp"
#include "retroharness/reaction/ontology.hpp"

int main() {
  // Amide coupling: acid chloride + ethylamine.
  const auto rx = rh::parse_reaction_smiles(
      "Cl[C:1](=[O:2])[c:3]1[cH:4][cH:5][cH:6][cH:7][cH:8]1.[NH2:9][CH2:10][CH3:11]>>"
      "[O:2]=[C:1]([NH:9][CH2:10][CH3:11])[c:3]1[cH:4][cH:5][cH:6][cH:7][cH:8]1");
  const auto label = rh::extract_structural_label(rx.reactants, rx.product);
  std::cout << "reaction center:";
  for (int m: label.atoms.to_vector()) std::cout << ' ' << m;
  std::cout << " (" << rh::to_string(label.kind) << ")\n";

  rh::Ontology ontology;
  ontology.entries = {{"Acylation of primary amines", "Acylation"}, {"Suzuki coupling", "C-C Coupling"}};

  const auto position_prompt = rh::render_position_prompt(rx.product, ontology);
  std::cout << "position prompt: " << position_prompt.text.size() << " chars, digest "
            << position_prompt.template_digest.substr(0, 12) << "\n";

  const std::string position_reply = R"(Here is my analysis.
{"disconnections": [
  {"disconnection": "C:1 N:9",
   "reactions": [{"forwardReaction": "Acylation of primary amines", "forwardReactionClass": "Acylation",
                  "Retrosynthesis Importance": 1, "Priority": 1}]},
  {"disconnection": "c:3 C:1",
   "reactions": [{"forwardReaction": "Friedel-Crafts acylation", "forwardReactionClass": "Acylation",
                  "Retrosynthesis Importance": 3, "Priority": 2}]}]})";
  const auto candidates = rh::parse_position_output(position_reply, rx.product, ontology);
  const auto ps = rh::score_position(candidates.ok, label.atoms, "Acylation of primary amines");
  std::cout << "position: " << candidates.ok.size() << " candidates, best Jaccard " << ps.best_jaccard
            << ", exact " << ps.exact_match << ", reaction match " << ps.reaction_match.value_or(false) << "\n";

  const auto transition_prompt =
      rh::render_transition_prompt(rx.product, label.atoms, "Acylation of primary amines", {},
                                   rh::TransitionVariant::kShort);
  std::cout << "transition prompt: " << transition_prompt.text.size() << " chars\n";

  const std::string transition_reply = R"({"reaction_analysis": [{
    "forward_reaction_name": "Acylation of primary amines",
    "reactant_permutations": [
      {"reactants": ["O=C(Cl)c1ccccc1", "CCN"], "is_valid": true, "is_template": false},
      {"reactants": ["[*][C:1](=[O:2])[c:3]1[cH:4][cH:5][cH:6][cH:7][cH:8]1", "[NH2:9][CH2:10][CH3:11]"],
       "is_valid": true, "is_template": true}]}]})";
  const auto predictions = rh::parse_transition_output(transition_reply, rx.product);
  const auto ts = rh::score_transition(predictions.ok, rx.reactants);
  std::cout << "transition: reactant " << ts.reactant_acc << ", template " << ts.template_acc
            << ", combined " << ts.combined_acc << "\n";
  return 0;
}
