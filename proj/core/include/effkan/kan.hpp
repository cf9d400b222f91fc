#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "effkan/report.hpp"
#include "effkan/sieve.hpp"
#include "effkan/simplicial.hpp"

namespace effkan {

// A map Lambda^n_m -> X, given by its facets: for each k != m an element
// x_k of X_{n-1}, satisfying the face compatibility
//   x_l o d_k = x_k o d_{l-1}   for k < l, both != m.
struct HornMap {
    HornSpec spec;
    std::vector<Elem> facets;  // length n+1, slot m holds kNoElem

    bool operator==(const HornMap&) const = default;
};

std::optional<std::string> horn_map_error(const TruncatedSimplicialSet& X, const HornMap& x);

// x o g for any g : [l] -> [n] that factors through the horn. The face
// compatibility makes the value independent of the containing face chosen.
Elem evaluate_horn_map(const TruncatedSimplicialSet& X, const HornMap& x, const MonotoneMap& g);

// A horn map into X over a base simplex y of Y_n, commuting with alpha:
// alpha(x_k) = y o d_k for all k != m.
struct LiftingProblem {
    HornMap horn;
    Elem base = 0;

    bool operator==(const LiftingProblem&) const = default;
};

std::optional<std::string> problem_error(const SimplicialMap& alpha, const LiftingProblem& p);

// Both lift laws: filler o d_k = x_k for all k != m, and alpha(filler) = y.
bool solves(const SimplicialMap& alpha, const LiftingProblem& p, Elem filler);

// All fillers of p, by brute force over X_n.
std::vector<Elem> all_fillers(const SimplicialMap& alpha, const LiftingProblem& p);

std::string describe(const SimplicialMap& alpha, const LiftingProblem& p);

// Canonical problem encoding: (n, m, facets, base).
using ProblemKey = std::tuple<int, int, std::vector<Elem>, Elem>;
ProblemKey problem_key(const LiftingProblem& p);

// A total choice of fillers for every lifting problem with n <= bound,
// stored as a memo table so extensional equality is decidable.
struct LiftAssignment {
    int bound = 0;
    std::map<ProblemKey, Elem> table;

    Elem at(const LiftingProblem& p) const;  // throws std::out_of_range if absent
    bool operator==(const LiftAssignment&) const = default;
};

// lift_+ and lift_-, each defined only on its signed horns: m = 0 forces -,
// m = n forces +.
struct SignedLiftAssignment {
    LiftAssignment plus;
    LiftAssignment minus;

    bool operator==(const SignedLiftAssignment&) const = default;
};

bool sign_allows(const HornSpec& spec, char sign);

const LiftAssignment& signed_table(const SignedLiftAssignment& s, char sign);
LiftAssignment& signed_table(SignedLiftAssignment& s, char sign);

// Enumeration of horn maps / problems, in canonical (key-ascending) order.
// Facet tuples are grown facet-by-facet with incremental compatibility
// pruning.
std::vector<HornMap> enumerate_horn_maps(const TruncatedSimplicialSet& X, const HornSpec& spec);
std::vector<LiftingProblem> enumerate_lifting_problems(const SimplicialMap& alpha,
                                                       const HornSpec& spec);
std::vector<LiftingProblem> enumerate_lifting_problems(const SimplicialMap& alpha, int maxdim);

// Raw upper bound |X_{n-1}|^n * |Y_n| summed over horns with n <= maxdim;
// used by callers that refuse oversized exhaustive sweeps.
std::uint64_t estimate_problem_count(const SimplicialMap& alpha, int maxdim);

LiftAssignment build_lift_assignment(const SimplicialMap& alpha, int bound,
                                     const std::function<Elem(const LiftingProblem&)>& filler);

// The Malcev horn-filling construction. Starting from w_{-1} = beta_n(y),
// with k' = k for k < m and k' = k - 1 for k > m, the operator
//   N_k(w) = mu(w, w o d_k o s_{k'}, x_k o s_{k'})
// is applied ascending for 0 <= k < m, then w_{n+1} = w_{m-1}, then
// descending for m < k <= n; the lift is w_{m+1} (which is w_{n+1} when
// m = n). Requires Malcev structures, an algebraic alpha, and a
// degeneracy-section beta.
Elem malcev_lift(const SimplicialMap& alpha, const DegeneracySection& beta,
                 const LiftingProblem& p);

// The full helper sequence {(k, w_k)} in encounter order; the last entry is
// the lift.
std::vector<std::pair<int, Elem>> trace_malcev(const SimplicialMap& alpha,
                                               const DegeneracySection& beta,
                                               const LiftingProblem& p);

// The assignment p |-> malcev_lift(p) tabulated for all n <= bound.
LiftAssignment malcev_assignment(const SimplicialMap& alpha, const DegeneracySection& beta,
                                 int bound);

// All pairs (z, j) with z o s_j solving p. All returned fillers coincide as
// elements of X_n; the dp checker verifies this on every sweep.
std::vector<std::pair<Elem, int>> find_degenerate_solutions(const SimplicialMap& alpha,
                                                            const LiftingProblem& p);

// Pulling the horn inclusion back along s_j : Delta^{n+1} -> Delta^n misses
// faces {j, j+1} and, when j != m, the face m* with s_j o d_{m*} = d_m o s_{j*}.
struct PullbackIndex {
    int mstar = 0;
    std::optional<int> jstar;  // set exactly when j != m
};

std::vector<PullbackIndex> horn_pullback_indices(int n, int m, int j);

// s_j^*(x) : Lambda^{n+1}_{m*} -> X by the face-value formula:
// facet k is x o s_j o d_k away from {j, j+1, m*} and `lift` on
// {j, j+1} minus {m*}.
HornMap pulled_horn_map(const TruncatedSimplicialSet& X, const LiftingProblem& p, Elem lift,
                        int j, int mstar);

// The same horn map by the restriction formulation: lift o s_j restricted to the
// (n+1, m*)-horn.
HornMap pulled_horn_map_restricted(const TruncatedSimplicialSet& X, int n, Elem lift, int j,
                              int mstar);

// The lifting problem (s_j^*(x), y o s_j), face-value route.
LiftingProblem pulled_problem(const SimplicialMap& alpha, const LiftingProblem& p, Elem lift,
                              int j, int mstar);

// The assignment that outputs the degenerate filler whenever one exists and
// base's output otherwise.
LiftAssignment degenerate_preferring_assignment(const SimplicialMap& alpha,
                                                const LiftAssignment& base);

// lift_+ = lift_- = L on inner horns, restricted to the signed horns.
SignedLiftAssignment duplicate_signs(const LiftAssignment& L);

// Checkers. Reports carry an independent_count computed by a second
// enumeration route (sieve-map filling instead of facet tuples).
CheckReport check_lift_correctness(const SimplicialMap& alpha, const LiftAssignment& L,
                                   int maxdim, int jobs = 1, SampleSpec sample = {});
CheckReport check_degenerate_preferring(const SimplicialMap& alpha, const LiftAssignment& L,
                                        int maxdim, int jobs = 1, SampleSpec sample = {});
CheckReport check_symmetric_effective(const SimplicialMap& alpha, const LiftAssignment& L,
                                      int maxdim, int jobs = 1, SampleSpec sample = {});
CheckReport check_effective(const SimplicialMap& alpha, const SignedLiftAssignment& S,
                            int maxdim, int jobs = 1, SampleSpec sample = {});

// A map S -> X for S a sieve of Delta^a: a table on the non-degenerate
// simplices of S, face-compatible. Generalizes HornMap; the value on any
// p : [l] -> [a] factoring through S is table[image(p)] o (epi part of p).
struct SieveMap {
    Sieve domain;
    std::map<VertexSet, Elem> values;

    bool operator==(const SieveMap&) const = default;
};

std::optional<std::string> sieve_map_error(const TruncatedSimplicialSet& X, const SieveMap& u);
Elem evaluate_sieve_map(const TruncatedSimplicialSet& X, const SieveMap& u, const MonotoneMap& p);
SieveMap restrict_sieve_map(const SieveMap& u, const Sieve& s);
SieveMap pullback_sieve_map(const TruncatedSimplicialSet& X, const SieveMap& u,
                            const MonotoneMap& f);
SieveMap sieve_map_from_horn_map(const TruncatedSimplicialSet& X, const HornMap& x);

// All face-compatible maps S -> X, filled member-by-member in ascending
// (dimension, mask) order.
std::vector<SieveMap> enumerate_sieve_maps(const TruncatedSimplicialSet& X, const Sieve& s);

// Problem cardinality via sieve-map enumeration; the independent route used
// to cross-check enumerate_lifting_problems.
std::uint64_t count_problems_by_sieve_maps(const SimplicialMap& alpha, const HornSpec& spec);
std::uint64_t count_problems_by_sieve_maps(const SimplicialMap& alpha, int maxdim);

}  // namespace effkan
