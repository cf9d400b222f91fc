#include "effkan/kan.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "effkan/parallel.hpp"

namespace effkan {

namespace {

void require_spec(const HornSpec& spec) {
    if (!horn_spec_valid(spec)) throw std::invalid_argument("invalid horn spec");
}

void finalize(CheckReport& report) {
    std::sort(report.failures.begin(), report.failures.end());
}

template <typename T>
void apply_sample(std::vector<T>& items, SampleSpec sample) {
    if (sample.count == 0 || sample.count >= items.size()) return;
    std::mt19937_64 rng(sample.seed);
    std::shuffle(items.begin(), items.end(), rng);
    items.resize(sample.count);
}

}  // namespace

std::optional<std::string> horn_map_error(const TruncatedSimplicialSet& X, const HornMap& x) {
    if (!horn_spec_valid(x.spec)) return "invalid horn spec";
    const int n = x.spec.n;
    const int m = x.spec.m;
    if (n > X.truncation) return "horn dimension exceeds truncation";
    if (x.facets.size() != static_cast<std::size_t>(n) + 1) return "facet list has wrong length";
    for (int k = 0; k <= n; ++k) {
        const Elem f = x.facets[static_cast<std::size_t>(k)];
        if (k == m) {
            if (f != kNoElem) return "slot m must be empty";
        } else if (f >= X.size(n - 1)) {
            return "facet out of range at k=" + std::to_string(k);
        }
    }
    for (int k = 0; k <= n; ++k) {
        if (k == m) continue;
        for (int l = k + 1; l <= n; ++l) {
            if (l == m) continue;
            const Elem xk = x.facets[static_cast<std::size_t>(k)];
            const Elem xl = x.facets[static_cast<std::size_t>(l)];
            if (act(X, n - 1, xl, face_map(n - 2, k)) != act(X, n - 1, xk, face_map(n - 2, l - 1)))
                return "face compatibility fails at (k,l)=(" + std::to_string(k) + "," +
                       std::to_string(l) + ")";
        }
    }
    return std::nullopt;
}

Elem evaluate_horn_map(const TruncatedSimplicialSet& X, const HornMap& x, const MonotoneMap& g) {
    require_spec(x.spec);
    const int n = x.spec.n;
    const int m = x.spec.m;
    if (g.cod != n) throw std::invalid_argument("evaluate_horn_map: codomain mismatch");
    const VertexSet image = map_image(g);
    // pick a containing face d_c with c != m
    int c = -1;
    for (int v = 0; v <= n; ++v) {
        if (v == m) continue;
        if ((image & (VertexSet{1} << v)) == 0) {
            c = v;
            break;
        }
    }
    if (c < 0) throw std::invalid_argument("evaluate_horn_map: map does not factor through the horn");
    MonotoneMap rest{g.dom, n - 1, {}};
    rest.values.reserve(g.values.size());
    for (int v : g.values) rest.values.push_back(v < c ? v : v - 1);
    return act(X, n - 1, x.facets[static_cast<std::size_t>(c)], rest);
}

std::optional<std::string> problem_error(const SimplicialMap& alpha, const LiftingProblem& p) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const TruncatedSimplicialSet& Y = *alpha.target;
    if (auto err = horn_map_error(X, p.horn)) return err;
    const int n = p.horn.spec.n;
    const int m = p.horn.spec.m;
    if (p.base >= Y.size(n)) return "base out of range";
    for (int k = 0; k <= n; ++k) {
        if (k == m) continue;
        if (alpha.apply(n - 1, p.horn.facets[static_cast<std::size_t>(k)]) !=
            act(Y, n, p.base, face_map(n - 1, k)))
            return "commutativity fails at k=" + std::to_string(k);
    }
    return std::nullopt;
}

bool solves(const SimplicialMap& alpha, const LiftingProblem& p, Elem filler) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const int n = p.horn.spec.n;
    const int m = p.horn.spec.m;
    if (filler >= X.size(n)) return false;
    if (alpha.apply(n, filler) != p.base) return false;
    for (int k = 0; k <= n; ++k) {
        if (k == m) continue;
        if (act(X, n, filler, face_map(n - 1, k)) != p.horn.facets[static_cast<std::size_t>(k)])
            return false;
    }
    return true;
}

std::vector<Elem> all_fillers(const SimplicialMap& alpha, const LiftingProblem& p) {
    std::vector<Elem> out;
    for (Elem h = 0; h < alpha.source->size(p.horn.spec.n); ++h)
        if (solves(alpha, p, h)) out.push_back(h);
    return out;
}

std::string describe(const SimplicialMap& alpha, const LiftingProblem& p) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const int n = p.horn.spec.n;
    std::string s = "horn(" + std::to_string(n) + "," + std::to_string(p.horn.spec.m) + ") facets[";
    bool first = true;
    for (int k = 0; k <= n; ++k) {
        if (k == p.horn.spec.m) continue;
        if (!first) s += ",";
        first = false;
        s += std::to_string(k) + ":" + X.name(n - 1, p.horn.facets[static_cast<std::size_t>(k)]);
    }
    return s + "] base=" + alpha.target->name(n, p.base);
}

ProblemKey problem_key(const LiftingProblem& p) {
    return {p.horn.spec.n, p.horn.spec.m, p.horn.facets, p.base};
}

Elem LiftAssignment::at(const LiftingProblem& p) const {
    const auto it = table.find(problem_key(p));
    if (it == table.end())
        throw std::out_of_range("lift assignment has no entry for the given problem");
    return it->second;
}

bool sign_allows(const HornSpec& spec, char sign) {
    if (sign == '+') return spec.m != 0;
    if (sign == '-') return spec.m != spec.n;
    throw std::invalid_argument("sign must be '+' or '-'");
}

const LiftAssignment& signed_table(const SignedLiftAssignment& s, char sign) {
    if (sign == '+') return s.plus;
    if (sign == '-') return s.minus;
    throw std::invalid_argument("sign must be '+' or '-'");
}

LiftAssignment& signed_table(SignedLiftAssignment& s, char sign) {
    if (sign == '+') return s.plus;
    if (sign == '-') return s.minus;
    throw std::invalid_argument("sign must be '+' or '-'");
}

std::vector<HornMap> enumerate_horn_maps(const TruncatedSimplicialSet& X, const HornSpec& spec) {
    require_spec(spec);
    const int n = spec.n;
    const int m = spec.m;
    if (n > X.truncation)
        throw std::out_of_range("enumerate_horn_maps: horn dimension exceeds truncation");
    std::vector<int> slots;
    for (int k = 0; k <= n; ++k)
        if (k != m) slots.push_back(k);

    std::vector<HornMap> out;
    HornMap cur{spec, std::vector<Elem>(static_cast<std::size_t>(n) + 1, kNoElem)};
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == slots.size()) {
            out.push_back(cur);
            return;
        }
        const int l = slots[idx];
        for (Elem x = 0; x < X.size(n - 1); ++x) {
            bool ok = true;
            for (std::size_t prev = 0; prev < idx && ok; ++prev) {
                const int k = slots[prev];
                const Elem xk = cur.facets[static_cast<std::size_t>(k)];
                if (n >= 2 &&
                    act(X, n - 1, x, face_map(n - 2, k)) != act(X, n - 1, xk, face_map(n - 2, l - 1)))
                    ok = false;
            }
            if (!ok) continue;
            cur.facets[static_cast<std::size_t>(l)] = x;
            self(self, idx + 1);
        }
        cur.facets[static_cast<std::size_t>(l)] = kNoElem;
    };
    rec(rec, 0);
    return out;
}

std::vector<LiftingProblem> enumerate_lifting_problems(const SimplicialMap& alpha,
                                                       const HornSpec& spec) {
    const TruncatedSimplicialSet& Y = *alpha.target;
    const int n = spec.n;
    const int m = spec.m;
    std::vector<LiftingProblem> out;
    for (const HornMap& x : enumerate_horn_maps(*alpha.source, spec)) {
        for (Elem y = 0; y < Y.size(n); ++y) {
            bool ok = true;
            for (int k = 0; k <= n && ok; ++k) {
                if (k == m) continue;
                if (alpha.apply(n - 1, x.facets[static_cast<std::size_t>(k)]) !=
                    act(Y, n, y, face_map(n - 1, k)))
                    ok = false;
            }
            if (ok) out.push_back(LiftingProblem{x, y});
        }
    }
    return out;
}

std::vector<LiftingProblem> enumerate_lifting_problems(const SimplicialMap& alpha, int maxdim) {
    std::vector<LiftingProblem> out;
    for (int n = 1; n <= maxdim; ++n) {
        for (int m = 0; m <= n; ++m) {
            auto part = enumerate_lifting_problems(alpha, HornSpec{n, m});
            out.insert(out.end(), part.begin(), part.end());
        }
    }
    return out;
}

std::uint64_t estimate_problem_count(const SimplicialMap& alpha, int maxdim) {
    std::uint64_t total = 0;
    for (int n = 1; n <= maxdim && n <= alpha.source->truncation; ++n) {
        std::uint64_t tuples = 1;
        for (int k = 0; k < n; ++k) tuples *= alpha.source->size(n - 1);
        total += (static_cast<std::uint64_t>(n) + 1) * tuples * alpha.target->size(n);
    }
    return total;
}

LiftAssignment build_lift_assignment(const SimplicialMap& alpha, int bound,
                                     const std::function<Elem(const LiftingProblem&)>& filler) {
    if (bound < 1 || bound > alpha.source->truncation)
        throw std::invalid_argument("build_lift_assignment: bound outside truncation");
    LiftAssignment L;
    L.bound = bound;
    for (const LiftingProblem& p : enumerate_lifting_problems(alpha, bound))
        L.table.emplace(problem_key(p), filler(p));
    return L;
}

namespace {

void require_malcev_data(const SimplicialMap& alpha) {
    if (!alpha.source->malcev || !alpha.target->malcev)
        throw std::invalid_argument("missing Malcev structure");
    if (!alpha.algebraic) throw std::invalid_argument("map is not declared algebraic");
}

std::vector<std::pair<int, Elem>> trace_malcev_unchecked(const SimplicialMap& alpha,
                                                         const DegeneracySection& beta,
                                                         const LiftingProblem& p) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const int n = p.horn.spec.n;
    const int m = p.horn.spec.m;
    auto step = [&](int k, Elem w) {
        const int kp = k < m ? k : k - 1;
        const MonotoneMap dk = face_map(n - 1, k);
        const MonotoneMap skp = degeneracy_map(n - 1, kp);
        const Elem a = act(X, n - 1, act(X, n, w, dk), skp);
        const Elem b = act(X, n - 1, p.horn.facets[static_cast<std::size_t>(k)], skp);
        return X.mu(n, w, a, b);
    };
    std::vector<std::pair<int, Elem>> trace;
    Elem w = beta.apply(n, p.base);
    trace.emplace_back(-1, w);
    for (int k = 0; k < m; ++k) {
        w = step(k, w);
        trace.emplace_back(k, w);
    }
    trace.emplace_back(n + 1, w);  // w_{n+1} = w_{m-1}
    for (int k = n; k > m; --k) {
        w = step(k, w);
        trace.emplace_back(k, w);
    }
    return trace;
}

}  // namespace

std::vector<std::pair<int, Elem>> trace_malcev(const SimplicialMap& alpha,
                                               const DegeneracySection& beta,
                                               const LiftingProblem& p) {
    require_malcev_data(alpha);
    if (p.horn.spec.n > alpha.source->truncation)
        throw std::out_of_range("trace_malcev: horn dimension exceeds truncation");
    if (auto err = problem_error(alpha, p))
        throw std::invalid_argument("trace_malcev: invalid lifting problem: " + *err);
    if (auto report = validate_section(alpha, beta); !report.ok())
        throw std::invalid_argument("trace_malcev: degeneracy-section laws violated: " +
                                    report.violations.front());
    return trace_malcev_unchecked(alpha, beta, p);
}

Elem malcev_lift(const SimplicialMap& alpha, const DegeneracySection& beta,
                 const LiftingProblem& p) {
    return trace_malcev(alpha, beta, p).back().second;
}

LiftAssignment malcev_assignment(const SimplicialMap& alpha, const DegeneracySection& beta,
                                 int bound) {
    require_malcev_data(alpha);
    if (auto report = validate_section(alpha, beta); !report.ok())
        throw std::invalid_argument("malcev_assignment: degeneracy-section laws violated: " +
                                    report.violations.front());
    return build_lift_assignment(alpha, bound, [&](const LiftingProblem& p) {
        return trace_malcev_unchecked(alpha, beta, p).back().second;
    });
}

std::vector<std::pair<Elem, int>> find_degenerate_solutions(const SimplicialMap& alpha,
                                                            const LiftingProblem& p) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const int n = p.horn.spec.n;
    if (n > X.truncation)
        throw std::out_of_range("find_degenerate_solutions: dimension exceeds truncation");
    std::vector<std::pair<Elem, int>> out;
    for (Elem z = 0; z < X.size(n - 1); ++z)
        for (int j = 0; j <= n - 1; ++j)
            if (solves(alpha, p, act(X, n - 1, z, degeneracy_map(n - 1, j))))
                out.emplace_back(z, j);
    return out;
}

std::vector<PullbackIndex> horn_pullback_indices(int n, int m, int j) {
    require_spec(HornSpec{n, m});
    if (j < 0 || j > n) throw std::invalid_argument("horn_pullback_indices: j out of range");
    if (m < j) return {PullbackIndex{m, j - 1}};
    if (m > j) return {PullbackIndex{m + 1, j}};
    return {PullbackIndex{m, std::nullopt}, PullbackIndex{m + 1, std::nullopt}};
}

namespace {

void require_pullback_shape(int n, int m, int j, int mstar) {
    const auto allowed = horn_pullback_indices(n, m, j);
    for (const PullbackIndex& idx : allowed)
        if (idx.mstar == mstar) return;
    throw std::invalid_argument("m* is not admissible for this (n,m,j)");
}

}  // namespace

HornMap pulled_horn_map(const TruncatedSimplicialSet& X, const LiftingProblem& p, Elem lift,
                        int j, int mstar) {
    const int n = p.horn.spec.n;
    require_pullback_shape(n, p.horn.spec.m, j, mstar);
    if (n + 1 > X.truncation) throw std::out_of_range("pulled_horn_map: truncation exceeded");
    HornMap out{HornSpec{n + 1, mstar}, std::vector<Elem>(static_cast<std::size_t>(n) + 2, kNoElem)};
    const MonotoneMap sj = degeneracy_map(n, j);
    for (int k = 0; k <= n + 1; ++k) {
        if (k == mstar) continue;
        if (k == j || k == j + 1) {
            out.facets[static_cast<std::size_t>(k)] = lift;
        } else {
            out.facets[static_cast<std::size_t>(k)] =
                evaluate_horn_map(X, p.horn, compose(sj, face_map(n, k)));
        }
    }
    return out;
}

HornMap pulled_horn_map_restricted(const TruncatedSimplicialSet& X, int n, Elem lift, int j,
                              int mstar) {
    if (n + 1 > X.truncation)
        throw std::out_of_range("pulled_horn_map_restricted: truncation exceeded");
    const Elem degenerate = act(X, n, lift, degeneracy_map(n, j));
    HornMap out{HornSpec{n + 1, mstar}, std::vector<Elem>(static_cast<std::size_t>(n) + 2, kNoElem)};
    for (int k = 0; k <= n + 1; ++k) {
        if (k == mstar) continue;
        out.facets[static_cast<std::size_t>(k)] = act(X, n + 1, degenerate, face_map(n, k));
    }
    return out;
}

LiftingProblem pulled_problem(const SimplicialMap& alpha, const LiftingProblem& p, Elem lift,
                              int j, int mstar) {
    const int n = p.horn.spec.n;
    return LiftingProblem{pulled_horn_map(*alpha.source, p, lift, j, mstar),
                          act(*alpha.target, n, p.base, degeneracy_map(n, j))};
}

LiftAssignment degenerate_preferring_assignment(const SimplicialMap& alpha,
                                                const LiftAssignment& base) {
    LiftAssignment out;
    out.bound = base.bound;
    for (const auto& [key, filler] : base.table) {
        LiftingProblem p{HornMap{HornSpec{std::get<0>(key), std::get<1>(key)}, std::get<2>(key)},
                         std::get<3>(key)};
        const auto degenerate = find_degenerate_solutions(alpha, p);
        if (degenerate.empty()) {
            out.table.emplace(key, filler);
        } else {
            const auto& [z, j] = degenerate.front();
            out.table.emplace(key, act(*alpha.source, p.horn.spec.n - 1, z,
                                       degeneracy_map(p.horn.spec.n - 1, j)));
        }
    }
    return out;
}

SignedLiftAssignment duplicate_signs(const LiftAssignment& L) {
    SignedLiftAssignment s;
    s.plus.bound = L.bound;
    s.minus.bound = L.bound;
    for (const auto& [key, filler] : L.table) {
        const HornSpec spec{std::get<0>(key), std::get<1>(key)};
        if (sign_allows(spec, '+')) s.plus.table.emplace(key, filler);
        if (sign_allows(spec, '-')) s.minus.table.emplace(key, filler);
    }
    return s;
}

CheckReport check_lift_correctness(const SimplicialMap& alpha, const LiftAssignment& L,
                                   int maxdim, int jobs, SampleSpec sample) {
    if (maxdim > L.bound)
        throw std::invalid_argument("check_lift_correctness: assignment bound too small");
    auto problems = enumerate_lifting_problems(alpha, maxdim);
    apply_sample(problems, sample);
    CheckReport report;
    report.checker = "kan";
    report.instances = problems.size();
    report.independent_count = count_problems_by_sieve_maps(alpha, maxdim);
    report.failures = sweep_failures(problems.size(), jobs, [&](std::uint64_t i) {
        const LiftingProblem& p = problems[i];
        std::vector<std::string> fails;
        Elem filler;
        try {
            filler = L.at(p);
        } catch (const std::out_of_range&) {
            fails.push_back(describe(alpha, p) + " : no assigned filler");
            return fails;
        }
        if (!solves(alpha, p, filler))
            fails.push_back(describe(alpha, p) + " : assigned filler " +
                            alpha.source->name(p.horn.spec.n, filler) + " does not solve the problem");
        return fails;
    });
    finalize(report);
    return report;
}

CheckReport check_degenerate_preferring(const SimplicialMap& alpha, const LiftAssignment& L,
                                        int maxdim, int jobs, SampleSpec sample) {
    if (maxdim > L.bound)
        throw std::invalid_argument("check_degenerate_preferring: assignment bound too small");
    auto problems = enumerate_lifting_problems(alpha, maxdim);
    apply_sample(problems, sample);
    CheckReport report;
    report.checker = "dp";
    report.instances = problems.size();
    report.independent_count = count_problems_by_sieve_maps(alpha, maxdim);
    const TruncatedSimplicialSet& X = *alpha.source;
    report.failures = sweep_failures(problems.size(), jobs, [&](std::uint64_t i) {
        const LiftingProblem& p = problems[i];
        std::vector<std::string> fails;
        const auto degenerate = find_degenerate_solutions(alpha, p);
        if (degenerate.empty()) return fails;
        const int n = p.horn.spec.n;
        const Elem first =
            act(X, n - 1, degenerate.front().first, degeneracy_map(n - 1, degenerate.front().second));
        for (const auto& [z, j] : degenerate) {
            if (act(X, n - 1, z, degeneracy_map(n - 1, j)) != first) {
                fails.push_back(describe(alpha, p) + " : degenerate fillers disagree");
                return fails;
            }
        }
        if (L.at(p) != first)
            fails.push_back(describe(alpha, p) + " : assignment chooses " + X.name(n, L.at(p)) +
                            " over the degenerate filler " + X.name(n, first));
        return fails;
    });
    finalize(report);
    return report;
}

namespace {

// Sum over problems with n <= maxdim of the (j, m*) pair count n + 2,
// using the sieve-map problem counts per horn spec.
std::uint64_t count_pullback_instances(const SimplicialMap& alpha, int maxdim) {
    std::uint64_t total = 0;
    for (int n = 1; n <= maxdim; ++n)
        for (int m = 0; m <= n; ++m)
            total += count_problems_by_sieve_maps(alpha, HornSpec{n, m}) *
                     (static_cast<std::uint64_t>(n) + 2);
    return total;
}

struct PullbackInstance {
    LiftingProblem problem;
    int j = 0;
    int mstar = 0;
};

std::vector<PullbackInstance> pullback_instances(const std::vector<LiftingProblem>& problems) {
    std::vector<PullbackInstance> out;
    for (const LiftingProblem& p : problems) {
        const int n = p.horn.spec.n;
        for (int j = 0; j <= n; ++j)
            for (const PullbackIndex& idx : horn_pullback_indices(n, p.horn.spec.m, j))
                out.push_back(PullbackInstance{p, j, idx.mstar});
    }
    return out;
}

}  // namespace

CheckReport check_symmetric_effective(const SimplicialMap& alpha, const LiftAssignment& L,
                                      int maxdim, int jobs, SampleSpec sample) {
    if (maxdim + 1 > alpha.source->truncation)
        throw std::out_of_range("check_symmetric_effective: truncation exceeded (need maxdim+1)");
    if (maxdim + 1 > L.bound)
        throw std::invalid_argument("check_symmetric_effective: assignment bound too small");
    const TruncatedSimplicialSet& X = *alpha.source;
    auto instances = pullback_instances(enumerate_lifting_problems(alpha, maxdim));
    apply_sample(instances, sample);
    CheckReport report;
    report.checker = "symmetric";
    report.instances = instances.size();
    report.independent_count = count_pullback_instances(alpha, maxdim);
    report.failures = sweep_failures(instances.size(), jobs, [&](std::uint64_t i) {
        const auto& [p, j, mstar] = instances[i];
        std::vector<std::string> fails;
        const int n = p.horn.spec.n;
        const Elem lift = L.at(p);
        const std::string where =
            describe(alpha, p) + " j=" + std::to_string(j) + " m*=" + std::to_string(mstar);
        LiftingProblem pulled = pulled_problem(alpha, p, lift, j, mstar);
        if (auto err = problem_error(alpha, pulled)) {
            fails.push_back(where + " : pulled-back problem invalid (" + *err + ")");
            return fails;
        }
        const Elem expected = act(X, n, lift, degeneracy_map(n, j));
        Elem got;
        try {
            got = L.at(pulled);
        } catch (const std::out_of_range&) {
            fails.push_back(where + " : no assigned filler for the pulled-back problem");
            return fails;
        }
        if (got != expected)
            fails.push_back(where + " : lift(s_j^*(x), y o s_j) = " + X.name(n + 1, got) +
                            " but lift(x,y) o s_j = " + X.name(n + 1, expected));
        return fails;
    });
    finalize(report);
    return report;
}

CheckReport check_effective(const SimplicialMap& alpha, const SignedLiftAssignment& S,
                            int maxdim, int jobs, SampleSpec sample) {
    if (maxdim + 1 > alpha.source->truncation)
        throw std::out_of_range("check_effective: truncation exceeded (need maxdim+1)");
    if (maxdim + 1 > S.plus.bound || maxdim + 1 > S.minus.bound)
        throw std::invalid_argument("check_effective: assignment bound too small");
    const TruncatedSimplicialSet& X = *alpha.source;
    const TruncatedSimplicialSet& Y = *alpha.target;

    struct SignedInstance {
        char sign;
        PullbackInstance inst;
    };
    std::vector<SignedInstance> instances;
    std::uint64_t independent = 0;  // full cardinality even under sampling
    const auto problems = enumerate_lifting_problems(alpha, maxdim);
    for (char sign : {'+', '-'}) {
        std::vector<LiftingProblem> allowed;
        for (const LiftingProblem& p : problems)
            if (sign_allows(p.horn.spec, sign)) allowed.push_back(p);
        for (const PullbackInstance& inst : pullback_instances(allowed))
            instances.push_back(SignedInstance{sign, inst});
        for (int n = 1; n <= maxdim; ++n)
            for (int m = 0; m <= n; ++m)
                if (sign_allows(HornSpec{n, m}, sign))
                    independent += count_problems_by_sieve_maps(alpha, HornSpec{n, m}) *
                                   (static_cast<std::uint64_t>(n) + 2);
    }
    apply_sample(instances, sample);

    CheckReport report;
    report.checker = "effective";
    report.instances = instances.size();
    report.independent_count = independent;
    report.failures = sweep_failures(instances.size(), jobs, [&](std::uint64_t i) {
        const auto& [sign, inst] = instances[i];
        const auto& [p, j, mstar] = inst;
        std::vector<std::string> fails;
        const int n = p.horn.spec.n;
        const HornSpec inner_spec{n + 1, mstar};
        if (!sign_allows(inner_spec, sign))
            throw std::logic_error("check_effective: sign constraint violated by m* horn");
        const LiftAssignment& L = signed_table(S, sign);
        const Elem lift = L.at(p);
        const std::string where = std::string(1, sign) + " " + describe(alpha, p) +
                                  " j=" + std::to_string(j) + " m*=" + std::to_string(mstar);
        // inner map built by the restriction formulation: lift o s_j o iota*
        LiftingProblem pulled{pulled_horn_map_restricted(X, n, lift, j, mstar),
                              act(Y, n, p.base, degeneracy_map(n, j))};
        if (auto err = problem_error(alpha, pulled)) {
            fails.push_back(where + " : pulled-back problem invalid (" + *err + ")");
            return fails;
        }
        const Elem expected = act(X, n, lift, degeneracy_map(n, j));
        Elem got;
        try {
            got = L.at(pulled);
        } catch (const std::out_of_range&) {
            fails.push_back(where + " : no assigned filler for the pulled-back problem");
            return fails;
        }
        if (got != expected)
            fails.push_back(where + " : lift(lift(x,y) o s_j o iota*, y o s_j) = " +
                            X.name(n + 1, got) + " but lift(x,y) o s_j = " + X.name(n + 1, expected));
        return fails;
    });
    finalize(report);
    return report;
}

std::optional<std::string> sieve_map_error(const TruncatedSimplicialSet& X, const SieveMap& u) {
    if (!downward_closed(u.domain)) return "domain is not a sieve";
    for (VertexSet mask : u.domain.members) {
        const int level = std::popcount(mask) - 1;
        if (level > X.truncation) return "simplex dimension exceeds truncation";
        const auto it = u.values.find(mask);
        if (it == u.values.end()) return "missing value on a member simplex";
        if (it->second >= X.size(level)) return "value out of range";
    }
    if (u.values.size() != u.domain.members.size()) return "value on a non-member";
    for (VertexSet mask : u.domain.members) {
        const int level = std::popcount(mask) - 1;
        if (level == 0) continue;
        const Elem val = u.values.at(mask);
        int t = 0;
        for (VertexSet v = mask; v != 0; v &= v - 1, ++t) {
            const VertexSet sub = mask & ~(v & (~v + 1));
            if (act(X, level, val, face_map(level - 1, t)) != u.values.at(sub))
                return "face compatibility fails on a member simplex";
        }
    }
    return std::nullopt;
}

Elem evaluate_sieve_map(const TruncatedSimplicialSet& X, const SieveMap& u, const MonotoneMap& p) {
    if (p.cod != u.domain.ambient)
        throw std::invalid_argument("evaluate_sieve_map: ambient mismatch");
    const VertexSet image = map_image(p);
    const auto it = u.values.find(image);
    if (it == u.values.end())
        throw std::invalid_argument("evaluate_sieve_map: map does not factor through the sieve");
    const std::vector<int> verts = vertex_list(image);
    MonotoneMap epi{p.dom, static_cast<int>(verts.size()) - 1, {}};
    epi.values.reserve(p.values.size());
    for (int v : p.values)
        epi.values.push_back(static_cast<int>(
            std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()));
    return act(X, static_cast<int>(verts.size()) - 1, it->second, epi);
}

SieveMap restrict_sieve_map(const SieveMap& u, const Sieve& s) {
    SieveMap out{s, {}};
    for (VertexSet mask : s.members) out.values.emplace(mask, u.values.at(mask));
    return out;
}

SieveMap pullback_sieve_map(const TruncatedSimplicialSet& X, const SieveMap& u,
                            const MonotoneMap& f) {
    SieveMap out{pullback_sieve(f, u.domain), {}};
    for (VertexSet mask : out.domain.members)
        out.values.emplace(mask,
                           evaluate_sieve_map(X, u, compose(f, mono_from_vertices(mask, f.dom))));
    return out;
}

SieveMap sieve_map_from_horn_map(const TruncatedSimplicialSet& X, const HornMap& x) {
    SieveMap out{horn_sieve(x.spec), {}};
    for (VertexSet mask : out.domain.members)
        out.values.emplace(mask, evaluate_horn_map(X, x, mono_from_vertices(mask, x.spec.n)));
    return out;
}

std::vector<SieveMap> enumerate_sieve_maps(const TruncatedSimplicialSet& X, const Sieve& s) {
    std::vector<VertexSet> masks(s.members.begin(), s.members.end());
    std::sort(masks.begin(), masks.end(), [](VertexSet a, VertexSet b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (VertexSet mask : masks)
        if (std::popcount(mask) - 1 > X.truncation)
            throw std::out_of_range("enumerate_sieve_maps: simplex dimension exceeds truncation");

    std::vector<SieveMap> out;
    SieveMap cur{s, {}};
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == masks.size()) {
            out.push_back(cur);
            return;
        }
        const VertexSet mask = masks[idx];
        const int level = std::popcount(mask) - 1;
        for (Elem x = 0; x < X.size(level); ++x) {
            bool ok = true;
            if (level > 0) {
                int t = 0;
                for (VertexSet v = mask; v != 0 && ok; v &= v - 1, ++t) {
                    const VertexSet sub = mask & ~(v & (~v + 1));
                    if (act(X, level, x, face_map(level - 1, t)) != cur.values.at(sub)) ok = false;
                }
            }
            if (!ok) continue;
            cur.values[mask] = x;
            self(self, idx + 1);
            cur.values.erase(mask);
        }
    };
    rec(rec, 0);
    return out;
}

std::uint64_t count_problems_by_sieve_maps(const SimplicialMap& alpha, const HornSpec& spec) {
    const TruncatedSimplicialSet& Y = *alpha.target;
    const int n = spec.n;
    const int m = spec.m;
    std::uint64_t total = 0;
    for (const SieveMap& u : enumerate_sieve_maps(*alpha.source, horn_sieve(spec))) {
        for (Elem y = 0; y < Y.size(n); ++y) {
            bool ok = true;
            for (int k = 0; k <= n && ok; ++k) {
                if (k == m) continue;
                const VertexSet face_mask =
                    map_image(face_map(n - 1, k));
                if (alpha.apply(n - 1, u.values.at(face_mask)) !=
                    act(Y, n, y, face_map(n - 1, k)))
                    ok = false;
            }
            if (ok) ++total;
        }
    }
    return total;
}

std::uint64_t count_problems_by_sieve_maps(const SimplicialMap& alpha, int maxdim) {
    std::uint64_t total = 0;
    for (int n = 1; n <= maxdim; ++n)
        for (int m = 0; m <= n; ++m) total += count_problems_by_sieve_maps(alpha, HornSpec{n, m});
    return total;
}

}  // namespace effkan
