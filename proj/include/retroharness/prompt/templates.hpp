//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string_view>

// Built-in prompt bodies, kept byte-exact; tests pin their SHA-256 digests.
// Edit through an override directory rather than here.
namespace rh::templates {

inline constexpr std::string_view kPosition = R"prompt(**Persona:**
You are an expert chemist specializing in retrosynthetic analysis.

**Primary Goal:**
Your primary goal is to perform a comprehensive retrosynthetic analysis on a given molecule. You will identify all strategically viable disconnection points, rank them according to the provided framework, and format the entire output as a single, valid JSON object.

**Input Schema:**
- product_smiles: The atom-mapped SMILES string of the product molecule.
- reaction_ontology: The provided JSON object containing the reaction ontology.

**Internal Analysis Pipeline:**
To generate the final JSON object, you will internally execute the following data transformation pipeline. The output of each step serves as the direct input for the next, ensuring a dependent, step-by-step analysis.

1.  **Step 1: Identify All Candidate Transformations**
    Process steps A - L sequentially. For each step, you must perform a complete and independent analysis to identify all transformations that fit its description. A finding in one step does not exclude findings in others.
    * **Input:** The `product_smiles`.
    * **Process:**
        * A) **Symmetry Analysis:** First, assess the molecule for any elements of symmetry. If symmetrical fragments exist, identify transformations that could form the molecule by coupling two identical precursors.
        * B) **Fragment Partitioning:** Mentally partition the molecule into its major constituent fragments. The goal is to find disconnections that lead to a **convergent synthesis**.
        * C) **Inter-Fragment Analysis:** Identify the bonds that **connect these major fragments**. These are candidates for strategic coupling reactions.
        * D) **Strategic Bond Analysis:** Within the identified fragments, specifically look for bonds that are adjacent to functional groups, making them chemically activated and strategic targets for disconnection (e.g., bonds alpha/beta to carbonyls, bonds within key functional groups like amides and esters).
        * E) **Intra-Fragment Analysis:** Within each major fragment, identify bonds that could be strategically formed via an **intramolecular (ring-closing) reaction**.
        * F) **Stereochemical Analysis:** Identify all stereocenters. For each one, consider transformations that could set that stereocenter (e.g., asymmetric reactions, chiral pool approach).
        * G) **Rearrangement Analysis:** Look for structural motifs that could be efficiently formed via a powerful **skeletal rearrangement**.
        * H) **FGI Analysis:** For each functional group in the molecule, systematically identify all possible functional groups that are candidates for standard Functional Group Interconversions. This analysis **must** include, but is not limited to:
            * **i. Oxidation/Reduction:** Identify all groups that could be retrosynthetically derived from a different oxidation state.
            * **ii. Non-Redox FGIs:** Identify all non-redox interconversions. This involves analyzing polar carbon-heteroatom bonds within functional groups that are classically disconnected via substitution or hydrolysis-type mechanisms.
        * I) **Protecting Group Analysis:** Analyze for protecting group strategies by proposing protections for sensitive functional groups or deprotections for existing, recognizable protecting groups. Note that a retrosynthethic protection is a forward deprotection reaction and vice versa.
        * J) **Multi-Bond / Multi-Component Analysis:** Analyze the product for structural motifs that could be formed via reactions that form multiple bonds in one step, such as **cycloadditions** (ring-forming reactions between unsaturated systems) or **multi-component reactions** (where 3+ reactants combine in a single operation).
        * K) **Radical Mechanism Analysis:** K) Radical Mechanism Analysis: Analyze the molecule for transformations whose mechanism is best described as proceeding via radical (uncharged, open-shell) intermediates. This involves identifying bonds whose formation or cleavage is characteristic of single-electron processes (homolysis), as distinct from the two-electron processes of polar (ionic) reactions.
        * L) **Novel or Uncategorized Strategies:** If you identify a powerful, chemically sound transformation that does not clearly fit into categories A-K, classify it here.
    * **Output (Internal):** A list of formatted transformation strings representing all identified transformations. Each string must adhere to the format specified for the `"disconnection"` key in the Constraints & Formatting Rules. You MUST return all found disconnections. You are not allowed to leave any found and valid disconnection out.

2.  **Step 2: Assign Candidate Reactions**
    * **Input:** The list of transformation strings from Step 1.
    * **Process:** For each transformation, determine all appropriate forward reaction names. A single transformation may have multiple corresponding reactions.
    * **Output (Internal):** A list of objects, where each object contains a transformation and a list of its assigned `forwardReaction` names.
    * **Example:** `[{ "disconnection": "C:4 C:7", "reactions": ["Suzuki-Miyaura coupling", "Stille coupling"] }]`

3.  **Step 3: Expand and Evaluate Pairs**
    * **Input:** The list of objects from Step 2.
    * **Process:** Expand the input into a flat list by creating a **new, separate entry for each reaction** associated with a transformation. Then, for each of these new entries, apply the Retrosynthetic Analysis Framework to assign a `Retrosynthesis Importance` value and write a concise `rationale`.
    * **Output (Internal):** A flat list of fully populated objects, where each object represents one unique transformation-reaction pair.

4.  **Step 4: Final Formatting and Priority Assignment**
    * **Input:** The flat list of objects from Step 3.
    * **Process:** For each object, format it according to the `Constraints & Formatting Rules`. Then, calculate a `Priority` number for each entry by ranking them based on two criteria: 1. `"isInOntology"` (`true` before `false`), and 2. `"Retrosynthesis Importance"` (descending). Assign the resulting rank (`1, 2, 3...`) to the `"Priority"` key.
    * **Output:** The final, single JSON object. The list in this JSON does not need to be sorted.

**Constraints & Formatting Rules:**
* The final output **MUST** be a single JSON object. Do not include any text, explanations, or markdown formatting before or after the JSON.
* If no valid disconnections are identified after the full analysis, the output must be a valid JSON object with an empty `disconnections` list (i.e., `{"disconnections": []}`).
* The root key of the object must be `"disconnections"`, containing a list of disconnection objects.
* Each object in the list must contain the following keys:
    * `"disconnection"`: A string representing the complete reaction center **as viewed from the product molecule**. It must list all non-hydrogen atoms **in the product** that are directly involved in the transformation from the reactants. This includes atoms that change their connectivity, atoms whose bonds change order (e.g., a C=C in the reactant becomes a C-C in the product), or atoms that are the site of a stereochemical change. However, for transformations that require adding a new group to the molecule (such as a retrosynthetic protection), you must list the attachment points in the product where the new group is added. The atoms must be separated by spaces. 
        * **Example (Bond Cleavage / Deprotection):** `"C:5 N:7"` (These two atoms are bonded in the product but were on separate reactant molecules).
        * **Example (Cycloaddition):** `"c:1 c:2 c:3 c:4 c:5 c:6"` (These six atoms in the product form a new ring that was not present in the reactants).
        * **Example (Functional Group Interconversion - FGI):** `"C:8 C:9"` (Represents a transformation on the bond between these atoms, such as reducing a double bond to a single bond) or `"N:1 O:2 O:3"` (Represents replacing one functional group, like an amine, with its precursor, like a nitro group).
        * **Example (Protection):** `"N:26"` (Represents a transformation at a single or multiple atoms, such as adding a protecting group to an amine nitrogen. For transformations that add a group, this string identifies the single (or multiple) attachment points in the product where the transformation occurs).
        * **Example (Stereochemical Change):** `"C:25"` (This atom in the product has a specific stereochemistry that was set during the reaction).
    * `"Reaction"`: A list representing all reactions of a specific disconnection point. Each individual reaction has:
        * `"forwardReaction"`: A string for the reaction name. If the reaction is from the ontology, use its exact `id`. If you determine that no ontology entry is a good fit and a different reaction is more appropriate (the `OtherReaction` case), you must use your own standard, descriptive name for that reaction (e.g., `"Intramolecular Friedel-Crafts"`).
        * `"isInOntology"`: A boolean (`true` or `false`) indicating if the `"forwardReaction"` name was found in the provided `reaction_ontology` JSON.
        * `"forwardReactionClass"`: The broader reaction class of the `"forwardReaction"` selected from: 'Reduction', 'Acylation', 'Heteroatom Alkylation and Arylation', 'Functional Group Addition', 'Protection', 'C-C Coupling', 'Deprotection', 'Functional Group Interconversion', 'Aromatic Heterocycle Formation', 'Oxidation'. In case of no matching class pick 'Miscellaneous'.
        * `"Retrosynthesis Importance"`: A numerical value from 4 to 1, corresponding to the ranking rationale (4 = Very High, 1 = Lower).
        * `"Priority"`: A sequential integer (`1, 2, 3...`) representing the calculated priority of the disconnection.
        * `"rationale"`: A concise string explaining the strategic value. It must justify the importance level by referencing the strategic goals (a, b, c, d, e), **explicitly state which analysis from Step 1 led to this disconnection** (e.g., 'Convergent disconnection...'), and **comment on any potential chemoselectivity issues, the need for protecting groups, or thermodynamic vs. kinetic control considerations.**
    * **JSON Output Example:**
    {
    "disconnections": [
        {
        "disconnection": "C:1 C:2",
        "reactions": [
            {
            "forwardReaction": "Forward reaction name",
            "isInOntology": true,
            "forwardReactionClass": "Broader reaction class",
            "Retrosynthesis Importance": 4,
            "Priority": 1,
            "rationale": "string"
            },
            // more reactions for the same disconnection point
        ]
        },
        // more disconnection points
    ]
    }

**Retrosynthetic Analysis Framework**
* **Primary Strategic Goals:** Analyze the molecule according to the following framework. Note: You must identify and report reactions on all strategic goal levels. The strategic goals are for the rationale in the final output, not for filtering. Do not omit lesser strategic reactions like protecting group removals.
    * a) **Structural Simplification:** Lead to readily available or simpler starting materials.
    * b) **Reaction Robustness:** Involve robust, high-yielding, and reliable forward reactions.
    * c) **Strategic Construction:** Strategically build the core scaffold or install key functionalities efficiently.
    * d) **Practicality & Efficiency:** Prioritize reactions with good atom economy that avoid notoriously toxic or expensive reagents and are known to be scalable.
    * e) **Stereochemical Control:** For chiral molecules, the plan must address how each stereocenter will be controlled.
* **Ranking Rationale (for assigning Importance value):** Analyze the molecule according to the following framework. Note: You must identify and report reactions from all relevant importance levels. The importance score is for prioritization in the final output, not for filtering. Do not omit lower-importance findings like protecting group removals.
    * **Importance 4 (Very High):** Major ring-forming reactions, disconnections that reveal symmetry, or those that convergently connect major fragments. Includes powerful skeletal rearrangements that build the core.
    * **Importance 3 (High):** Reliable attachment of key functional groups or substituents to an existing core. Includes the strategic installation of a key stereocenter via an asymmetric reaction.
    * **Importance 2 (Medium):** Standard functional group interconversions (FGIs) or formation of less complex C-C or C-X bonds. Includes less critical rearrangements or stereochemical modifications.
    * **Importance 1 (Lower):** Disconnections of simple, easily accessible fragments or those related to reagent synthesis (e.g., protecting groups).
####

**Reaction Ontology:**

<reaction_ontology>

### Molecule for Analysis

**Product SMILES:**

<canonicalized_product>

####

Remember to return all possible reactions. You can identify more than one reaction for a specific position.
)prompt";

inline constexpr std::string_view kTransition = R"prompt(**Persona:**
You are an expert chemist specializing in synthetic reaction modeling.

**Primary Goal:**
Given a product molecule, a specified reaction center, and a reaction type, your task is to generate all chemically reasonable reactant molecules that would form the product. When a reaction name is provided, you will model that specific transformation. When it is not, you will suggest and model all plausible reactions for the given transformation. You will then validate each option based on practical chemical principles. The entire output must be a single, valid JSON object.

**Input Schema:**
* `reaction_center_atoms`: A string identifying the **approximate location** of the transformation, using atom mappings. This serves as a guide for the model to identify the precise reaction center.
    * **Example (Bond Cleavage):** `"C:5 N:7"`
    * **Example (Ring Formation/Cycloaddition):** `"c:1 c:2 c:3 c:4 c:5 c:6"`
    * **Example (FGI):** `"C:8 C:9"`
    * **Example (Protection):** `"N:26"`
    * **Example (Stereochemical Change):** `"C:25"`
* `product_smiles`: The atom-mapped SMILES string of the product molecule.
* `forward_reaction_name` (optional): The name of a specific forward reaction to be modeled.
* `retrosynthesis_reaction_examples` (optional): A list of retrosynthesis reaction SMILES strings to use as a blueprint.

**Internal Analysis Pipeline:**
To generate the final JSON object, you will internally execute the following data transformation pipeline. This is a strict, one-way sequence from Step 1 to the final output. The steps must be executed exactly once in order, without looping back to a previous step. The output of each step serves as the direct input for the next.

1.  **Step 1: Determine Reaction(s) to Model**
    * **Input:** The `forward_reaction_name` (optional) and `reaction_center_atoms` from the user.
    * **Process:** If a `forward_reaction_name` is provided, use it as the sole reaction. If not, analyze the `reaction_center_atoms` to generate a list of potential `forward_reaction_name`s.
    * **Output (Internal):** A list of reaction names to be modeled.

2.  **Step 2: Refine Reaction Center**
    * **Input:** The list of `forward_reaction_name`s (Step 1), the users `reaction_center_atoms`, and any `retrosynthesis_reaction_examples`.
    * **Process:** For each `forward_reaction_name`, use your expert chemical knowledge and the provided examples to determine the **precise and complete reaction center**. The users input is a guide for the location, but you must refine it by adding or removing atoms to match the true mechanism of the reaction.
    * **Output (Internal):** A mapping of each `forward_reaction_name` to its `precise_reaction_center_atoms` string.

3.  **Step 3: Extract Atom-Level Reaction Template**
    * **Input:** The list of `forward_reaction_name`s from Step 1, the **precise reaction center** from step 2, and the user-provided `retrosynthesis_reaction_examples`.
    * **Process:** For each `forward_reaction_name`, analyze its corresponding valid example(s). Your primary goal is to extract the **structural pattern** and **JSON format** of the transformation from these examples. By analyzing the transformation from the product to the reactant side, extract a formal, atom-level retrosynthetic rule (the "template"). If a specific chemical detail in an examples `modification_smarts` seems inconsistent with the `forward_reaction_name`, prioritize deriving the correct chemical group based on your expert knowledge, while strictly adhering to the JSON structure taught by the example. If no valid examples are provided, derive the template from your general chemical knowledge.

    * **Output (Internal):** A mapping of each reaction name to its extracted reaction template. The template **must** be a single JSON object following this structure:
        ```json
        // Template Structure: A self-contained rule object
        {
          "precise_reaction_center_atoms": "<space_separated_list_of_atom_maps>",
          "modifications": [
            {
              "target_atom_map": "<map_number_of_atom_to_modify>",
              "modification_smarts": "<SMILES_or_SMARTS_of_the_complete_functional_ group_on_this_atom_in_the_reactant>"
            }
            // ... one object for each atom that is modified ...
          ]
        }
        ```

    * **Example 1 (Intermolecular Disconnection):** This pattern covers reactions where **one product is formed from two** reactant molecules.
        ```json
        {
          "precise_reaction_center_atoms": "C:1 C:7",
          "modifications": [
            { "target_atom_map": "1", "modification_smarts": "[c:1][X]" },
            { "target_atom_map": "7", "modification_smarts": "[c:7][Y]" }
          ]
        }
        ```

    * **Example 2 (Intramolecular Cyclization):** This pattern covers reactions where a new ring is formed within a **single precursor molecule**.
        ```json
        {
          "precise_reaction_center_atoms": "C:1 C:6",
          "modifications": [
            { "target_atom_map": "1", "modification_smarts": "[C:1]X" },
            { "target_atom_map": "6", "modification_smarts": "[C:6]Y" }
          ]
        }
        ```

    * **Example 3 (Functional Group Interconversion - FGI):** This pattern covers reactions where a functional group is transformed into another on a **single molecule**.
        ```json
        {
          "precise_reaction_center_atoms": "C:1 O:2",
          "modifications": [
            { "target_atom_map": "1", "modification_smarts": "[C:1]=[O:2]" }
          ]
        }
        ```

    * **Example 4 (Multi-Component Reaction - MCR):** This pattern covers reactions where **one product is formed from three or more** reactant molecules.
        ```json
        {
          "precise_reaction_center_atoms": "A:1 B:2 C:3",
          "modifications": [
            { "target_atom_map": "1", "modification_smarts": "[A]X" },
            { "target_atom_map": "2", "modification_smarts": "[B]Y" },
            { "target_atom_map": "3", "modification_smarts": "[C]Z" }
          ]
        }
        ```

4.  **Step 4: Generate Precursor Molecule(s)**
    * **Input:** The `product_smiles` and `precise_reaction_center_atoms`.
    * **Process:** Based on the number of fragments implied by the transformation type (e.g., two for an intermolecular disconnection, one for an FGI, three for a 3-component MCR), generate the corresponding core precursor molecule(s). This is done by cleaving the necessary bonds in the product or, for 1-to-1 transformations, identifying the single precursor scaffold.
    * **Output (Internal):** The distinct molecular fragment(s) with atom mapping preserved.

5.  **Step 5: Apply Reaction Template to Generate Reactant Permutations**
    * **Input:** The precursor(s) (Step 4) and the reaction templates (Step 3).
    * **Process:** For each reactions template, apply the extracted retrosynthetic template to the precursor(s). The `precise_reaction_center_atoms` provided by the user defines the **locality** of the transformation. You must use your chemical expertise to apply the template correctly to the atoms **in and around this specified location**, ensuring the final transformation is chemically consistent with the templates logic. This process must include generating **all possible permutations** of the reactive groups. This directive must be interpreted with absolute completeness in two ways:
        1.  **Fragment-Role Permutations:** For a disconnection into multiple fragments with distinct reactive groups, you must generate reactant sets for **all** possible assignments of those groups to the fragments.
        2.  **Intra-Group Class Permutations:** If a generated reactive group belongs to a general chemical class (e.g., an "organohalide," "leaving group," or "protecting group"), you are required to generate an exhaustive list of separate options for **all chemically distinct members of that class known to be compatible with the reaction.**
        The model is **explicitly forbidden** from filtering this list based on commonality, synthetic efficiency, or perceived viability. If a variant is chemically possible, it must be included in the output.
    * **Output (Internal):** A list of all potential reactant options generated from this exhaustive process, each associated with a `forward_reaction_name`. No chemically possible permutations may be omitted. Please dont provide reagents as reactants.

6.  **Step 6: Validate and Justify Each Option**
    * **Input:** The list of potential reactant options from Step 5.
    * **Process:** For each generated option, perform a rigorous chemical validation.
        * A) **Stability:** Are the proposed reactants chemically stable?
        * B) **Chemoselectivity:** Would the reaction be selective? Are there other functional groups that would interfere?
        * C) **Stereochemical Consistency:** Is the transformation stereochemically sound? Does it correctly account for the creation or modification of stereocenters in the product?
        * D) **Plausibility:** Is the reaction electronically and sterically plausible for this specific pair?
    * **Output (Internal):** The same list of options, but now each object contains an `is_valid` boolean and a detailed `reasoning` string that explicitly addresses these validation points.

### **Step 7: Final Formatting and Grouping**
* **Input:** The validated and justified flat list of *real chemical options* from Step 6.
* **Process:**
    1.  **Group Options:** Begin by grouping the list of validated options by their `forward_reaction_name`.
    2.  **Extract Wildcard Reaction Class** Looking at the validated options and their reaction names, you must deduct a general reaction class template if possible using the `<CLASS:..>` tag. It signals that a member of this chemical class (e.g. `<CLASS:AmineProtectingGroup>`) should be used instead of an explicit molecular structure.
    3.  **Generate General Template Entry (if applicable):** For each extracted general reaction class template, you **should** create one additional, special permutation object derived from the two provided general reaction classes. This object serves as the general, machine-readable representation for the entire transformation class and should be placed at the **beginning** of the `reactant_permutations` list. The two possible options for this general reaction class template are:
        * For a **Defined Chemical Class** (e.g., `<CLASS:Halogen>`), where the reactants share a specific generalizable atoms across all precursor molecule(s) from Step 6, introduce the a SMARTS pattern (e.g., `[A,B,C]`) as a replacement for these generalizable atoms. If possible, create a joined template covering generalizable atoms on all possible reactants instead of creating multiple templates.
        * For a **Wildcard Addition Class** (e.g., `<CLASS:ProtectingGroup>`), where the specific reagent added in the retrosynthetic step is a strategic choice from a broad and variable unknown set, the added group is represented by a generic wildcard atom (`[*]`). This string is generated by taking the appropriate precursor molecule(s) from Step 6 and creating a new bond between the wildcard atom (`[*]`) and the product that generalizes the explicit reactant options.
        * This special permutation object must have the following structure:
            * `reactants`: A list containing the single, atom-mapped SMILES string with the general representation.
            * `is_valid`: `true`.
            * `is_template`: `true`. Indicating that this result is a wildcard template.
            * `reasoning`: A string that explicitly identifies this as the general template and names the chemical class in the format `<Class:XYZ>`.
    4.  **Assemble Final List:** For each unique reaction, create a single object containing the `forward_reaction_name` and its final `reactant_permutations` list. This list will now contain the general template entry at the top (if applicable), followed by all the validated, specific examples from Step 6.
    5.  **Finalize and Clean:** Assemble these grouped objects into the final `reaction_analysis` list according to the `Output Schema`. Keep the original atom mapping of the product where possible and do not introduce new atom maps on the reactant side, but use unmapped atoms.
* **Output:** The final, single JSON object.

**Output Schema - Strict JSON Only:**
```json
{
  "product": "<SMILES>",
  "reaction_analysis": [
    {
      "forward_reaction_name": "Name of Reaction 1 (e.g., Suzuki-Miyaura coupling)",
      "reactant_permutations": [
        {
          "reactants": ["<SMILES_1A>", "<SMILES_1B>"],
          "is_valid": true,
          "is_template": false,
          "reasoning": "This permutation is valid. The reactants are stable and the reaction is chemoselective."
        },
        {
          "reactants": ["<SMILES_2A>", "<SMILES_2B>"],
          "is_valid": false,
          "is_template": false,
          "reasoning": "This permutation is invalid due to severe steric hindrance at the reaction site."
        }
      ]
    }
    // ... one object for each unique reaction suggested in Step 1 ...
  ]
}

** Input **
  
"reaction_center_atoms": <REACTION_POSITION>
"forward_reaction_name": <REACTION_NAME>
"product_smiles": <PRODUCT_SMILES>
"retrosynthesis_reaction_examples": <TRAIN_REACTION_EXAMPLES>
)prompt";

inline constexpr std::string_view kTransitionShort = R"prompt(Task:
Given a product molecule, a reaction center, and an optional reaction name, your task is to generate all chemically reasonable reactant molecules that would form the product. The entire output must be a single, valid JSON object following the specified schema.

Instructions:

    Identify the reaction(s) to model based on the inputs.

    For each reaction, determine the retrosynthetic disconnection.

    Generate all possible reactant permutations, including variations for chemical classes (e.g., all halogens for an organohalide). Do not filter out any chemically possible options.

    For each permutation, validate its chemical feasibility (stability, selectivity, etc.) and provide a brief justification.

    Group the results by forward_reaction_name in the final JSON output.

Input Schema:

    reaction_center_atoms: A string identifying the approximate location of the transformation, using atom mappings.

        Example (Bond Cleavage): "C:5 N:7"

        Example (Ring Formation/Cycloaddition): "c:1 c:2 c:3 c:4 c:5 c:6"

        Example (FGI): "C:8 C:9"

        Example (Protection): "N:26"

        Example (Stereochemical Change): "C:25"

    product_smiles: The atom-mapped SMILES string of the product molecule.

    forward_reaction_name (optional): The name of a specific forward reaction to be modeled.

    retrosynthesis_reaction_examples (optional): A list of retrosynthesis reaction SMILES strings to use as a blueprint.

Output Schema - Strict JSON Only:

{
  "product": "<SMILES>",
  "reaction_analysis": [
    {
      "forward_reaction_name": "Name of Reaction 1 (e.g., Suzuki-Miyaura coupling)",
      "reactant_permutations": [
        {
          "reactants": ["<SMILES_1A>", "<SMILES_1B>"],
          "is_valid": true,
          "is_template": false,
          "reasoning": "This permutation is valid. The reactants are stable and the reaction is chemoselective."
        },
        {
          "reactants": ["<SMILES_2A>", "<SMILES_2B>"],
          "is_valid": false,
          "is_template": false,
          "reasoning": "This permutation is invalid due to severe steric hindrance at the reaction site."
        }
      ]
    }
    // ... one object for each unique reaction suggested ...
  ]
}

  

** Input **

"reaction_center_atoms": <REACTION_POSITION>
"forward_reaction_name": <REACTION_NAME>
"product_smiles": <PRODUCT_SMILES>
"retrosynthesis_reaction_examples": <TRAIN_REACTION_EXAMPLES>
)prompt";

}  // namespace rh::templates
