#pragma once

#include "hom_ext.hpp"

namespace dglift {

struct StageRecord {
    int stage = 0;
    bool solved = false;
    // valuation of the delta block entering this stage (ring precision when
    // the block is zero)
    int delta_valuation = 0;
    int params = 0;  // homotopy unknowns solved at this stage
};

// One corrective step: the input delta block, divisible by t^(stage-1), is
// pushed to divisibility by t^stage.
struct StepResult {
    ModulePtr next_module;
    GradedHom z, v;              // correction pair on the inner carriers
    GradedHom iso, iso_inverse;  // elementary isomorphism input -> next_module
    GradedHom next_delta;        // exact divided delta block of next_module
    StageRecord record;
};

// Standalone step; recovers the exact divided delta from the stored block by
// a deterministic solve.  ShapeError when no valid division exists,
// ObstructionNonzero when the homotopy system is unsolvable.
StepResult lift_one_step(const ModulePtr& N, int stage);

struct LiftResult {
    ModulePtr lifted;            // semi-free module over the inner algebra
    ModulePtr block_form;        // final stage module, delta block zero
    GradedHom iso, iso_inverse;  // input -> block_form
    std::vector<StageRecord> transcript;
};

// Full t-adic loop, one step per ring digit.  ObstructionNonzero carries the
// failing stage.
LiftResult lift(const ModulePtr& N);

struct UniquenessResult {
    GradedHom iso;  // chain isomorphism M -> M2 over the inner algebra
    GradedHom iso_inverse;
    std::vector<GradedHom> xi_terms;  // per-stage corrections u^(j)
};

// Descends an isomorphism of the base changes to an isomorphism of the
// modules themselves.  Ext1Obstruction when a stage solve fails, NotAnIso
// when upsilon is not a degree-0 chain isomorphism of the base changes.
UniquenessResult uniqueness_iso(const ModulePtr& M, const ModulePtr& M2, const GradedHom& upsilon);

// Same homology invariants of base_change(Mlift) and D through the window
// (default: full honest support).  With allow_shift, also tries constant
// degree shifts.
bool verify_quasilift(const ModulePtr& Mlift, const ModulePtr& D,
                      std::optional<std::pair<int, int>> window = std::nullopt,
                      bool allow_shift = false);

struct IteratedStage {
    int variable = 0;  // 1-based index of the Koszul variable peeled
    ExtStatus ext2;    // Ext^2 self-extension status recorded before the lift
    std::vector<StageRecord> transcript;
};

struct IteratedResult {
    ModulePtr final_module;  // module over the degree-0 base algebra
    RComplex complex;        // its expanded picture
    std::vector<IteratedStage> stages;
    bool resolved = false;   // true when the input needed a resolution first
};

// Peels Koszul variables outermost first, lifting through each in turn.
IteratedResult lift_iterated(const ModulePtr& D);
// Non-semi-free input: resolve inside the window first (WindowExhausted when
// the resolution cannot be completed there).
IteratedResult lift_iterated(const GenericDGModule& D, int window_top);

}  // namespace dglift
