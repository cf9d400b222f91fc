// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Time budgets are enforced where stated.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "effkan/awfs.hpp"
#include "effkan/json_io.hpp"
#include "effkan/kan.hpp"

using namespace effkan;

namespace {

struct Fibration {
    TruncatedSimplicialSet X;
    TruncatedSimplicialSet Y;
    SimplicialMap alpha;
    DegeneracySection beta;
};

Fibration over_point(TruncatedSimplicialSet X) {
    Fibration f{std::move(X), constant_algebra(FiniteMalcevAlgebra::singleton(), 0), {}, {}};
    f.Y = constant_algebra(FiniteMalcevAlgebra::singleton(), f.X.truncation);
    f.alpha = to_terminal(f.X, f.Y);
    f.beta = section_from_point(f.X, 0);
    return f;
}

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;  // 0 = unbounded
    std::function<std::vector<std::string>()> run;
};

std::vector<std::string> fail_if(bool bad, const std::string& message) {
    if (bad) return {message};
    return {};
}

void append(std::vector<std::string>& into, std::vector<std::string> more) {
    into.insert(into.end(), more.begin(), more.end());
}

// ---- criterion bodies -----------------------------------------------------

std::vector<std::string> simplicial_identity_suite() {
    const IdentityCheckReport report = check_simplicial_identities(5);
    std::vector<std::string> failures = report.violations;
    append(failures, fail_if(report.instances == 0, "no identity instances checked"));
    return failures;
}

std::vector<std::string> factorization_round_trip() {
    std::vector<std::string> failures;
    std::uint64_t checked = 0;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b)
            for (const MonotoneMap& f : enumerate_monotone_maps(a, b)) {
                ++checked;
                if (recompose(factorize(f)) != f)
                    failures.push_back("round trip fails for " + to_string(f));
            }
    append(failures, fail_if(checked == 0, "no maps enumerated"));
    return failures;
}

std::vector<std::string> horn_count_law() {
    std::vector<std::string> failures;
    std::uint64_t attachments = 0;
    for (int ambient = 1; ambient <= 4; ++ambient) {
        for (const Sieve& s : enumerate_sieves(ambient)) {
            for (const SequenceStep& step : valid_attachments(s, ambient)) {
                ++attachments;
                const Sieve after = attach_horn(s, step.gen.spec, step.embedding);
                if (nondegenerate_count(after) != nondegenerate_count(s) + 2)
                    failures.push_back("attachment does not add exactly 2 simplices on " +
                                       to_string(s));
                if (!downward_closed(after))
                    failures.push_back("attachment broke downward closure on " + to_string(s));
            }
        }
    }
    append(failures, fail_if(attachments < 1000, "suspiciously few attachments enumerated"));
    return failures;
}

std::vector<std::string> lift_correctness(const std::vector<const Fibration*>& instances) {
    std::vector<std::string> failures;
    for (const Fibration* f : instances) {
        const LiftAssignment L = malcev_assignment(f->alpha, f->beta, 3);
        const CheckReport r = check_lift_correctness(f->alpha, L, 3, 2);
        append(failures, r.failures);
        append(failures, fail_if(r.instances != r.independent_count,
                                 "instance count mismatch between enumeration routes"));
        append(failures, fail_if(r.instances == 0, "no lifting problems enumerated"));
    }
    return failures;
}

std::vector<std::string> degenerate_preference(const std::vector<const Fibration*>& instances) {
    std::vector<std::string> failures;
    for (const Fibration* f : instances) {
        const LiftAssignment L = malcev_assignment(f->alpha, f->beta, 3);
        append(failures, check_degenerate_preferring(f->alpha, L, 3, 2).failures);
        // uniqueness of degenerate fillers, checked directly
        for (const LiftingProblem& p : enumerate_lifting_problems(f->alpha, 3)) {
            const auto sols = find_degenerate_solutions(f->alpha, p);
            if (sols.empty()) continue;
            const int n = p.horn.spec.n;
            const Elem first = act(f->X, n - 1, sols.front().first,
                                   degeneracy_map(n - 1, sols.front().second));
            for (const auto& [z, j] : sols)
                if (act(f->X, n - 1, z, degeneracy_map(n - 1, j)) != first)
                    failures.push_back("degenerate fillers disagree on " + describe(f->alpha, p));
        }
    }
    return failures;
}

std::vector<std::string> trace_lemmas(const std::vector<const Fibration*>& instances) {
    std::vector<std::string> failures;
    std::uint64_t degenerate_solvable = 0;
    for (const Fibration* f : instances) {
        for (const LiftingProblem& p : enumerate_lifting_problems(f->alpha, 3)) {
            const int n = p.horn.spec.n;
            const auto trace = trace_malcev(f->alpha, f->beta, p);
            // every filler is an N_k fixed point
            for (const Elem filler : all_fillers(f->alpha, p)) {
                for (int k = 0; k <= n; ++k) {
                    if (k == p.horn.spec.m) continue;
                    const int kp = k < p.horn.spec.m ? k : k - 1;
                    const Elem a = act(f->X, n - 1, act(f->X, n, filler, face_map(n - 1, k)),
                                       degeneracy_map(n - 1, kp));
                    const Elem b = act(f->X, n - 1, p.horn.facets[static_cast<std::size_t>(k)],
                                       degeneracy_map(n - 1, kp));
                    if (f->X.mu(n, filler, a, b) != filler)
                        failures.push_back("a filler is not an N_k fixed point on " +
                                           describe(f->alpha, p));
                }
            }
            const auto sols = find_degenerate_solutions(f->alpha, p);
            if (sols.empty()) continue;
            ++degenerate_solvable;
            for (const auto& [z, j] : sols) {
                const Elem gs = act(f->X, n - 1, z, degeneracy_map(n - 1, j));
                std::size_t first = trace.size();
                for (std::size_t i = 0; i < trace.size(); ++i)
                    if (trace[i].first == j || trace[i].first == j + 1) {
                        first = i;
                        break;
                    }
                for (std::size_t i = 0; i < trace.size(); ++i) {
                    if (i < first) {
                        bool degenerate_along_j = false;
                        for (Elem u = 0; u < f->X.size(n - 1) && !degenerate_along_j; ++u)
                            if (act(f->X, n - 1, u, degeneracy_map(n - 1, j)) == trace[i].second)
                                degenerate_along_j = true;
                        if (!degenerate_along_j)
                            failures.push_back("w_k before {j,j+1} not degenerate along j on " +
                                               describe(f->alpha, p));
                    } else if (trace[i].second != gs) {
                        failures.push_back("w_k at/after {j,j+1} differs from the degenerate "
                                           "filler on " +
                                           describe(f->alpha, p));
                    }
                }
            }
        }
    }
    append(failures,
           fail_if(degenerate_solvable == 0, "no degenerate-solvable problems were exercised"));
    return failures;
}

std::vector<std::string> pullback_combinatorics(const Fibration& nerve) {
    std::vector<std::string> failures;
    // which faces of Delta^{n+1} escape the pulled-back horn
    for (int n = 1; n <= 4; ++n) {
        for (int m = 0; m <= n; ++m) {
            for (int j = 0; j <= n; ++j) {
                const Sieve pulled = pullback_sieve(degeneracy_map(n, j), horn_sieve(HornSpec{n, m}));
                std::vector<int> expected{j, j + 1};
                if (j != m) expected.push_back(horn_pullback_indices(n, m, j).front().mstar);
                std::sort(expected.begin(), expected.end());
                std::vector<int> escaped;
                for (int k = 0; k <= n + 1; ++k)
                    if (!factors_through(face_map(n, k), pulled)) escaped.push_back(k);
                if (escaped != expected)
                    failures.push_back("face escape set wrong at n=" + std::to_string(n) +
                                       " m=" + std::to_string(m) + " j=" + std::to_string(j));
            }
        }
    }
    // face-value formula vs restriction formulation, every instance n <= 3
    const LiftAssignment L = malcev_assignment(nerve.alpha, nerve.beta, 3);
    std::uint64_t compared = 0;
    for (const LiftingProblem& p : enumerate_lifting_problems(nerve.alpha, 3)) {
        const int n = p.horn.spec.n;
        const Elem lift = L.at(p);
        for (int j = 0; j <= n; ++j)
            for (const PullbackIndex& idx : horn_pullback_indices(n, p.horn.spec.m, j)) {
                ++compared;
                if (pulled_horn_map(nerve.X, p, lift, j, idx.mstar) !=
                    pulled_horn_map_restricted(nerve.X, n, lift, j, idx.mstar))
                    failures.push_back("formulations disagree on " + describe(nerve.alpha, p) +
                                       " j=" + std::to_string(j) +
                                       " m*=" + std::to_string(idx.mstar));
            }
    }
    append(failures, fail_if(compared == 0, "no pullback instances compared"));
    return failures;
}

std::vector<std::string> implication_chain(const std::vector<const Fibration*>& instances) {
    std::vector<std::string> failures;
    for (const Fibration* f : instances) {
        const LiftAssignment L = malcev_assignment(f->alpha, f->beta, 4);
        append(failures, check_degenerate_preferring(f->alpha, L, 3, 2).failures);
        append(failures, check_symmetric_effective(f->alpha, L, 3, 2).failures);
        append(failures, check_effective(f->alpha, duplicate_signs(L), 3, 2).failures);
    }
    // negative controls on the nerve: each mutation must fire its checker
    const Fibration& f = *instances.front();
    const LiftAssignment L = malcev_assignment(f.alpha, f.beta, 4);
    {
        LiftingProblem p1;
        p1.horn.spec = HornSpec{1, 1};
        p1.horn.facets = {0, kNoElem};
        p1.base = 0;
        LiftAssignment broken = L;
        broken.table[problem_key(p1)] = 1;
        append(failures, fail_if(check_degenerate_preferring(f.alpha, broken, 3, 2).pass(),
                                 "dp negative control did not fire"));
    }
    {
        LiftingProblem p1;
        p1.horn.spec = HornSpec{1, 1};
        p1.horn.facets = {0, kNoElem};
        p1.base = 0;
        const LiftingProblem pulled = pulled_problem(f.alpha, p1, L.at(p1), 0, 2);
        LiftAssignment broken = L;
        broken.table[problem_key(pulled)] = 3;
        append(failures, fail_if(check_symmetric_effective(f.alpha, broken, 3, 2).pass(),
                                 "symmetric negative control did not fire"));
    }
    {
        LiftingProblem p0;
        p0.horn.spec = HornSpec{1, 0};
        p0.horn.facets = {kNoElem, 0};
        p0.base = 0;
        SignedLiftAssignment S = duplicate_signs(L);
        const LiftingProblem pulled{pulled_horn_map_restricted(f.X, 1, S.minus.at(p0), 0, 0), 0};
        S.minus.table[problem_key(pulled)] = 3;
        append(failures, fail_if(check_effective(f.alpha, S, 3, 2).pass(),
                                 "effective negative control did not fire"));
    }
    return failures;
}

std::vector<std::string> awfs_layer(const Fibration& nerve) {
    std::vector<std::string> failures;
    const LiftAssignment L = malcev_assignment(nerve.alpha, nerve.beta, 4);
    const LiftProvider provider = provider_from(L);

    // face squares pass universally for extension lifts
    const CheckReport faces =
        check_face_squares(nerve.alpha, provider, SquareSweepParams{3, 2, 3, false}, 2);
    append(failures, faces.failures);
    append(failures, fail_if(faces.instances == 0, "no face squares swept"));
    append(failures, fail_if(faces.instances != faces.independent_count,
                             "face square data counts disagree between routes"));

    // left vertical compatibility: extending over a composite equals
    // extending stepwise, on every split of a length-3 sequence
    {
        const Sieve start{2, {VertexSet{1} << 1}};
        std::vector<SequenceStep> steps;
        steps.push_back({Generator{HornSpec{1, 1}, std::nullopt},
                         mono_from_vertices((VertexSet{1} << 0) | (VertexSet{1} << 1), 2)});
        steps.push_back({Generator{HornSpec{1, 0}, std::nullopt},
                         mono_from_vertices((VertexSet{1} << 1) | (VertexSet{1} << 2), 2)});
        steps.push_back({Generator{HornSpec{2, 1}, std::nullopt}, identity_map(2)});
        const HornPushoutSequence seq = make_sequence(start, steps);
        SieveMap v{seq.end(), {}};
        for (VertexSet m : seq.end().members) v.values.emplace(m, 0);
        for (const SieveMap& u : enumerate_sieve_maps(nerve.X, seq.start())) {
            const SieveMap whole = extend_lift(nerve.alpha, provider, seq, u, v);
            for (std::size_t split = 0; split <= steps.size(); ++split) {
                const HornPushoutSequence first = make_sequence(
                    seq.start(), {steps.begin(), steps.begin() + static_cast<long>(split)});
                const HornPushoutSequence second = make_sequence(
                    first.end(), {steps.begin() + static_cast<long>(split), steps.end()});
                SieveMap vmid{first.end(), {}};
                for (VertexSet m : first.end().members) vmid.values.emplace(m, 0);
                const SieveMap mid = extend_lift(nerve.alpha, provider, first, u, vmid);
                if (extend_lift(nerve.alpha, provider, second, mid, v) != whole)
                    failures.push_back("stepwise extension differs from one-pass extension at "
                                       "split " +
                                       std::to_string(split));
            }
        }
    }

    // D-square characterization of degenerate preference
    const CheckReport dsq = check_D_squares(nerve.alpha, L, 3, 2);
    append(failures, dsq.failures);
    append(failures, fail_if(dsq.instances != dsq.independent_count,
                             "D-square counts disagree between routes"));
    {
        LiftingProblem p1;
        p1.horn.spec = HornSpec{1, 1};
        p1.horn.facets = {0, kNoElem};
        p1.base = 0;
        LiftAssignment broken = L;
        broken.table[problem_key(p1)] = 1;
        append(failures, fail_if(check_D_squares(nerve.alpha, broken, 3, 2).pass(),
                                 "D-square negative control did not fire"));
    }
    return failures;
}

std::vector<std::string> symmetric_not_dp_witness(const Fibration& nerve) {
    std::vector<std::string> failures;
    const LiftAssignment L = malcev_assignment(nerve.alpha, nerve.beta, 4);
    // modify the dp assignment at the Lambda^1_1 problem, choosing the
    // non-degenerate 1-cell
    LiftingProblem p1;
    p1.horn.spec = HornSpec{1, 1};
    p1.horn.facets = {0, kNoElem};
    p1.base = 0;
    LiftAssignment witness = L;
    const Elem nondegenerate = *nerve.X.find(1, "(1)");
    witness.table[problem_key(p1)] = nondegenerate;
    if (!solves(nerve.alpha, p1, nondegenerate))
        failures.push_back("witness cell does not solve the Lambda^1_1 problem");

    const CheckReport sym = check_symmetric_effective(nerve.alpha, witness, 3, 2);
    append(failures, sym.failures);  // must pass: the override is unreachable as s_j^*(x)

    const CheckReport dp = check_degenerate_preferring(nerve.alpha, witness, 3, 2);
    if (dp.pass()) failures.push_back("witness assignment unexpectedly degenerate-preferring");
    if (dp.failures.size() != 1)
        failures.push_back("dp must fail exactly at the modified problem, got " +
                           std::to_string(dp.failures.size()) + " failures");
    else if (dp.failures.front().find("horn(1,1)") == std::string::npos)
        failures.push_back("dp failure is not at the Lambda^1_1 problem: " + dp.failures.front());
    return failures;
}

}  // namespace

int main() {
    const Fibration nerve = over_point(nerve_abelian(FiniteAbelianGroup::cyclic(2), 4));
    const Fibration constant = over_point(constant_algebra(FiniteMalcevAlgebra::cyclic(2), 4));
    const std::vector<const Fibration*> instances{&nerve, &constant};

    const std::vector<Criterion> criteria{
        {1, "simplicial identities n<=5", 5.0, simplicial_identity_suite},
        {2, "factorization round trip dom,cod<=6", 10.0, factorization_round_trip},
        {3, "horn attachment adds exactly 2, ambient<=4", 0.0, horn_count_law},
        {4, "malcev lift solves every problem n<=3", 60.0,
         [&] { return lift_correctness(instances); }},
        {5, "degenerate preference and filler uniqueness", 0.0,
         [&] { return degenerate_preference(instances); }},
        {6, "trace lemmas on degenerate-solvable problems", 0.0,
         [&] { return trace_lemmas(instances); }},
        {7, "pullback combinatorics and formulation agreement", 0.0,
         [&] { return pullback_combinatorics(nerve); }},
        {8, "implication chain with negative controls", 0.0,
         [&] { return implication_chain(instances); }},
        {9, "awfs layer: face squares, composition law, D-squares", 120.0,
         [&] { return awfs_layer(nerve); }},
        {10, "symmetric-effective-but-not-dp witness", 0.0,
         [&] { return symmetric_not_dp_witness(nerve); }},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<std::string> failures;
        try {
            failures = criterion.run();
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0 && seconds > criterion.budget_seconds)
            failures.push_back("time budget exceeded: " + std::to_string(seconds) + "s > " +
                               std::to_string(criterion.budget_seconds) + "s");
        const bool ok = failures.empty();
        failed += ok ? 0 : 1;
        std::printf("%s  %2d  %-50s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.name.c_str(), seconds);
        for (const std::string& f : failures) std::printf("      %s\n", f.c_str());
    }
    if (failed) {
        std::printf("%d of %zu acceptance criteria failed\n", failed, criteria.size());
        return 1;
    }
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
    return 0;
}
