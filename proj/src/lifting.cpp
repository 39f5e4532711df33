#include "dglift/lifting.hpp"

#include <string>
#include <utility>

namespace dglift {

namespace {

int delta_block_valuation(const DGModule& N) {
    const TruncatedRing& R = N.ring();
    int best = R.precision();
    for (const auto& [d, count] : N.semibasis())
        for (int k = 0; k < count; ++k)
            for (const RingElement& e : N.delta_part(d, k))
                best = std::min(best, R.valuation(e));
    return best;
}

// delta block of the module in carrier coordinates, as stored (unscaled)
GradedHom delta_block_hom(const ModulePtr& N) {
    ModulePtr car = N->inner_carrier();
    GradedHom out(car, car, -2);
    for (const auto& [d, count] : N->semibasis())
        for (int k = 0; k < count; ++k) out.set_value(d, k, N->delta_part(d, k));
    return out;
}

struct StageOutcome {
    ModulePtr next;
    GradedHom z, v, iso, iso_inv, next_delta;
    StageRecord rec;
};

// One corrective stage: delta_exact is the stored delta block divided by
// t^(stage-1), known exactly.  Produces the stage-n module together with the
// elementary isomorphism onto it.
StageOutcome run_stage(const ModulePtr& cur, int stage, const GradedHom& delta_exact) {
    const TruncatedRing& R = cur->ring();
    ModulePtr car = cur->inner_carrier();

    GradedHom vzero(car, car, -3);
    GradedHom cyc = join_parts(cur, cur, delta_exact, vzero);
    if (!is_cycle(cyc))
        throw Error("internal: divided delta pair is not a cycle");

    auto S = try_null_homotopy(cyc);
    if (!S)
        throw ObstructionNonzero(
            stage, "obstruction at stage " + std::to_string(stage) +
                       ": the divided delta pair is a nonzero homology class");

    GradedHom z = z_part(*S);  // degree -1 on the carrier
    GradedHom v = v_part(*S);  // degree -2

    RingElement tn = R.mul_t_pow(R.one(), stage);
    RingElement tn1 = R.mul_t_pow(R.one(), stage - 1);

    GradedHom next_delta = v - compose(z, z).scaled(tn1);

    std::map<std::pair<int, int>, RVector> alpha, delta;
    for (const auto& [d, count] : cur->semibasis()) {
        for (int k = 0; k < count; ++k) {
            alpha[{d, k}] = vec_add(R, cur->alpha_part(d, k),
                                    vec_scale(R, tn, z.value(d, k)));
            delta[{d, k}] = vec_scale(R, tn, next_delta.value(d, k));
        }
    }
    ModulePtr next =
        make_block_module(cur->algebra(), cur->semibasis(), std::move(alpha),
                          std::move(delta));

    GradedHom idc = GradedHom::identity(car);
    GradedHom iso = join_parts(cur, next, idc, z.scaled(tn1).negated());
    GradedHom inv = join_parts(next, cur, idc, z.scaled(tn1));

    HomSlice slice(cur, cur, -1);
    StageRecord rec{stage, true, delta_block_valuation(*cur), slice.params()};
    GradedHom nd = transfer(next_delta, next->inner_carrier(), next->inner_carrier());
    return {next, std::move(z), std::move(v), std::move(iso), std::move(inv),
            std::move(nd), rec};
}

void require_liftable_shape(const ModulePtr& N, const char* op) {
    if (!N) throw PreconditionError(std::string(op) + ": null module");
    if (!N->algebra()->block())
        throw PreconditionError(std::string(op) +
                                ": module must live over a block algebra");
    if (N->truncated())
        throw PreconditionError(std::string(op) +
                                ": module must be complete, not truncated");
}

}  // namespace

StepResult lift_one_step(const ModulePtr& N, int stage) {
    require_liftable_shape(N, "lift_one_step");
    if (stage < 1) throw PreconditionError("lift_one_step: stage must be >= 1");
    const TruncatedRing& R = N->ring();
    ModulePtr car = N->inner_carrier();

    // Recover the exact divided delta: x with t^(stage-1) x = stored block
    // and the pair (x, 0) a cycle.  Both conditions are linear in x.
    HomSlice d2(car, car, -2);
    HomSlice pair3(N, N, -3);
    RVector corner = d2.to_params(delta_block_hom(N));
    int P = d2.params();
    int Q = pair3.params();
    RingElement tn1 = R.mul_t_pow(R.one(), stage - 1);

    RMatrix sys(R, P + Q, P);
    RVector rhs = vec_zero(R, P + Q);
    for (int j = 0; j < P; ++j) {
        sys.at(j, j) = tn1;
        rhs[j] = corner[j];
    }
    GradedHom vzero(car, car, -3);
    RVector e = vec_zero(R, P);
    for (int j = 0; j < P; ++j) {
        e[j] = R.one();
        GradedHom cand = d2.from_params(e);
        e[j] = R.zero();
        RVector col =
            pair3.to_params(hom_differential(join_parts(N, N, cand, vzero)));
        for (int r = 0; r < Q; ++r) sys.at(P + r, j) = col[r];
    }
    auto x = solve_linear(sys, rhs);
    if (!x)
        throw ShapeError(
            "delta block is not t^(stage-1) times a map with cycle pair");

    StageOutcome so = run_stage(N, stage, d2.from_params(*x));
    return {std::move(so.next), std::move(so.z),   std::move(so.v),
            std::move(so.iso),  std::move(so.iso_inv), std::move(so.next_delta),
            so.rec};
}

LiftResult lift(const ModulePtr& N) {
    require_liftable_shape(N, "lift");
    const TruncatedRing& R = N->ring();
    ModulePtr car = N->inner_carrier();
    int L = R.precision();

    ModulePtr cur = N;
    GradedHom vsum(car, car, -1);  // accumulated sum of t^(n-1) z^(n)
    std::vector<StageRecord> transcript;

    for (int n = 1; n <= L + 1; ++n) {
        if (delta_block_hom(cur).is_zero()) {
            transcript.push_back({n, true, L, 0});
            break;
        }
        StepResult st = lift_one_step(cur, n);
        vsum = vsum + transfer(st.z, car, car).scaled(R.mul_t_pow(R.one(), n - 1));
        cur = st.next_module;
        transcript.push_back(st.record);
    }
    if (!delta_block_hom(cur).is_zero())
        throw Error("internal: delta block nonzero after the full t-adic loop");

    GradedHom idc = GradedHom::identity(car);
    GradedHom iso = join_parts(N, cur, idc, vsum.negated());
    GradedHom inv = join_parts(cur, N, idc, vsum);
    if (!compose(inv, iso).equal_values(GradedHom::identity(N)) ||
        !is_chain_iso(iso))
        throw Error("internal: composite elementary map is not an isomorphism");

    ModulePtr lifted = restrict_to_inner(*cur);
    return {std::move(lifted), std::move(cur), std::move(iso), std::move(inv),
            std::move(transcript)};
}

UniquenessResult uniqueness_iso(const ModulePtr& M, const ModulePtr& M2,
                                const GradedHom& upsilon) {
    if (!M || !M2) throw PreconditionError("uniqueness_iso: null module");
    if (M->truncated() || M2->truncated())
        throw PreconditionError("uniqueness_iso: modules must be complete");
    AlgebraPtr B = upsilon.source()->algebra();
    if (!B->block())
        throw NotAnIso("the comparison map must live over a block algebra");

    ModulePtr NB1 = base_change(*M, B);
    ModulePtr NB2 = base_change(*M2, B);
    if (upsilon.degree() != 0 || !upsilon.source()->same_shape(*NB1) ||
        !upsilon.target()->same_shape(*NB2))
        throw NotAnIso(
            "the comparison map is not a degree-0 map between the base changes");
    GradedHom f0 = transfer(upsilon, NB1, NB2);
    if (!is_chain_iso(f0))
        throw NotAnIso("the comparison map is not a chain isomorphism");

    const TruncatedRing& R = M->ring();
    GradedHom z = z_part(f0);  // degree 0 between the carriers
    GradedHom p = v_part(f0);  // degree -1 defect
    std::vector<GradedHom> xi;
    for (int j = 0; j + 1 < R.precision(); ++j) {
        if (p.is_zero()) break;
        GradedHom rhs = base_change_hom(p, NB1, NB2);
        auto T = try_null_homotopy(rhs);
        if (!T)
            throw Ext1Obstruction(j, "uniqueness correction unsolvable at stage " +
                                         std::to_string(j));
        xi.push_back(z_part(*T));
        p = v_part(*T);
    }

    GradedHom acc = z;
    for (std::size_t j = 0; j < xi.size(); ++j)
        acc = acc + xi[j].scaled(R.mul_t_pow(R.one(), static_cast<int>(j) + 1));
    GradedHom iso = transfer(acc, M, M2);
    if (!is_chain_iso(iso))
        throw Error("internal: descended map is not a chain isomorphism");
    GradedHom inv = invert_iso(iso);
    return {std::move(iso), std::move(inv), std::move(xi)};
}

bool verify_quasilift(const ModulePtr& Mlift, const ModulePtr& D,
                      std::optional<std::pair<int, int>> window,
                      bool allow_shift) {
    if (!Mlift || !D) throw PreconditionError("verify_quasilift: null module");
    ModulePtr left = Mlift;
    if (!Mlift->algebra()->structurally_equal(*D->algebra())) {
        const auto& blk = D->algebra()->block();
        if (!blk || !blk->inner->structurally_equal(*Mlift->algebra()))
            throw AlgebraMismatch(
                "the candidate does not live over the algebra or its inner part");
        left = base_change(*Mlift, D->algebra());
    }

    int wlo, whi;
    if (window) {
        wlo = window->first;
        whi = window->second;
    } else {
        wlo = std::min(left->lo_component(), D->lo_component()) - 1;
        whi = std::max(left->hi_component(), D->hi_component()) + 1;
        if (left->truncated()) whi = std::min(whi, left->truncation_top() - 1);
        if (D->truncated()) whi = std::min(whi, D->truncation_top() - 1);
        if (whi < wlo) whi = wlo;
    }

    auto nonzero = [](const std::map<int, std::vector<int>>& h) {
        std::map<int, std::vector<int>> out;
        for (const auto& [d, inv] : h)
            if (!inv.empty()) out[d] = inv;
        return out;
    };
    auto hl = nonzero(homology(*left, wlo, whi));
    auto hr = nonzero(homology(*D, wlo, whi));
    if (hl == hr) return true;
    if (!allow_shift || hl.empty() || hr.empty()) return false;
    int s = hr.begin()->first - hl.begin()->first;
    if (s == 0) return false;
    std::map<int, std::vector<int>> shifted;
    for (const auto& [d, inv] : hl) shifted[d + s] = inv;
    return shifted == hr;
}

IteratedResult lift_iterated(const ModulePtr& D) {
    if (!D) throw PreconditionError("lift_iterated: null module");
    int layers = 0;
    for (AlgebraPtr a = D->algebra(); a->block(); a = a->block()->inner) ++layers;

    ModulePtr cur = D;
    std::vector<IteratedStage> stages;
    int variable = layers;
    while (cur->algebra()->block()) {
        ExtStatus e2 = ext_is_zero(2, cur, cur);
        try {
            LiftResult lr = lift(cur);
            stages.push_back({variable, std::move(e2), std::move(lr.transcript)});
            cur = lr.lifted;
        } catch (const ObstructionNonzero& o) {
            throw ObstructionNonzero(o.stage,
                                     std::string(o.what()) + " (variable " +
                                         std::to_string(variable) + ")",
                                     variable);
        }
        --variable;
    }
    RComplex cx = expand_to_r_linear(*cur);
    return {std::move(cur), std::move(cx), std::move(stages), false};
}

IteratedResult lift_iterated(const GenericDGModule& D, int window_top) {
    Resolution res = semi_free_resolution(D, window_top, true);
    IteratedResult out = lift_iterated(res.module);
    out.resolved = true;
    return out;
}

}  // namespace dglift
