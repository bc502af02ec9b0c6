#pragma once

#include "causalg/compile.hpp"
#include "causalg/identify.hpp"

namespace causalg {

enum class ModelKind { BN, Tree, Poset };

/// A parsed model file before compilation: the structural spec plus the
/// raw constraint lines, which can only be turned into polynomials once
/// the compiled variable table exists.
struct ModelFile {
  ModelKind kind = ModelKind::BN;
  std::string name;
  BNSpec bn;
  TreeSpec tree;
  HasseDiagram poset;
  std::vector<std::string> aux_names;
  std::vector<std::string> eq_lines;  // "lhs = rhs"
  std::vector<std::pair<std::string, IneqRel>> ineq_lines;  // lhs of "> 0"
};

ModelFile parse_model_text(const std::string& text, const std::string& origin);
ModelFile parse_model_file(const std::string& path);

/// Constraint-only file: aux/eq/ineq lines without a model header.
struct ConstraintFile {
  std::vector<std::string> aux_names;
  std::vector<std::string> eq_lines;
  std::vector<std::pair<std::string, IneqRel>> ineq_lines;
};

ConstraintFile parse_constraint_text(const std::string& text,
                                     const std::string& origin);
ConstraintFile parse_constraint_file(const std::string& path);

/// Parses the declared constraints against the model's table (auxiliary
/// names registered first, unknown identifiers rejected, pinned variables
/// substituted) and returns the constrained submodel.
CompiledModel apply_constraints(const CompiledModel& model,
                                const ConstraintFile& constraints,
                                const std::string& origin);

/// Compiles the model file and applies its own constraints followed by
/// each extra constraint file in order.
CompiledModel load_model(const std::string& model_path,
                         const std::vector<std::string>& constraint_paths);
CompiledModel compile_model_file(const ModelFile& file);

/// `manifest <name>` header, `obs <b-name> = <poly-expr>` observables and
/// optional `ineq: <poly-expr> > 0` lines.
ManifestSpec load_manifest(const std::string& path, const CompiledModel& model);
ManifestSpec parse_manifest_text(const std::string& text,
                                 const CompiledModel& model,
                                 const std::string& origin);

/// `effect <name> = <poly-expr>`; `pihat(...)` tokens refer to the
/// post-manipulation primitives and resolve to their `pi(...)` variables,
/// which the identify pipeline substitutes through the ManipulationSpec.
EffectSpec load_effect(const std::string& path, const CompiledModel& model);
EffectSpec parse_effect_text(const std::string& text,
                             const CompiledModel& model,
                             const std::string& origin);

/// `do <var> = <value>` lines (BN form) and general
/// `set pihat(<edge>) = <poly-expr>` definitions.
ManipulationSpec load_manipulation(const std::string& path,
                                   const CompiledModel& model);
ManipulationSpec parse_manipulation_text(const std::string& text,
                                         const CompiledModel& model,
                                         const std::string& origin);

/// Comma-separated event: `X1=1,X3=2` value constraints or `p(...)` atom
/// labels (the two forms cannot be mixed).
EventSpec parse_event(const std::string& text, const CompiledModel& model);

/// DOT text: the BN variable graph, or the Hasse diagram for trees and
/// posets (re-importable via import_dot).
std::string export_dot(const ModelFile& file);
HasseDiagram import_dot(const std::string& text);

/// JSON-lines rendering of a joint point: one record per chain with
/// fields `chain` and `prob` (exact rational as a string).
std::string joint_lines(const CompiledModel& model, const JointPoint& joint);

}  // namespace causalg
