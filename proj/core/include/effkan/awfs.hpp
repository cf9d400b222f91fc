#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effkan/kan.hpp"
#include "effkan/report.hpp"
#include "effkan/sieve.hpp"
#include "effkan/simplicial.hpp"

namespace effkan {

// One element of the generating set L: a horn inclusion, optionally signed.
// Unsigned generators model L = Lambda; signed ones the signed horn
// inclusions.
struct Generator {
    HornSpec spec;
    std::optional<char> sign;  // '+' or '-'

    bool operator==(const Generator&) const = default;
};

struct SequenceStep {
    Generator gen;
    MonotoneMap embedding;  // mono [n] -> [ambient]

    bool operator==(const SequenceStep&) const = default;
};

// A horn pushout sequence S_0 -> S_1 -> ... -> S_k of sieves of
// Delta^ambient: each step attaches one horn, both a pushout and a
// pullback, so each step adds exactly two non-degenerate simplices.
struct HornPushoutSequence {
    int ambient = 0;
    std::vector<Sieve> chain;        // S_0 .. S_k
    std::vector<SequenceStep> steps; // length k

    const Sieve& start() const { return chain.front(); }
    const Sieve& end() const { return chain.back(); }
    int length() const { return static_cast<int>(steps.size()); }

    bool operator==(const HornPushoutSequence&) const = default;
};

std::optional<std::string> sequence_error(const Sieve& start,
                                          const std::vector<SequenceStep>& steps);
HornPushoutSequence make_sequence(const Sieve& start, std::vector<SequenceStep> steps);

// A pullback square of horn pushout sequences: f : [a] -> [b] together with
// a nondecreasing reindex mu with mu(0) = 0, mu(l) = k and
// pullback_sieve(f, T_i) = S_{mu(i)} for all i.
struct SequenceSquare {
    MonotoneMap f;
    std::vector<int> reindex;     // length l+1
    HornPushoutSequence source;   // ambient a, length k
    HornPushoutSequence target;   // ambient b, length l

    bool operator==(const SequenceSquare&) const = default;
};

enum class SquareKind { face, degeneracy, composite };

SquareKind classify(const SequenceSquare& sq);
std::optional<std::string> square_error(const SequenceSquare& sq);
SequenceSquare make_square(MonotoneMap f, std::vector<int> reindex, HornPushoutSequence source,
                           HornPushoutSequence target);

// Stacks two squares with the same underlying f; the reindex is glued at the
// seam, where it is uniquely defined by mu(l) = k and nu(0) = 0.
SequenceSquare compose_squares_vertical(const SequenceSquare& p, const SequenceSquare& q);

// Pastes inner : rho -> sigma onto outer : sigma -> tau, composing the
// underlying maps and reindexes.
SequenceSquare compose_squares_horizontal(const SequenceSquare& inner, const SequenceSquare& outer);

// All single horn attachments available from S whose horn dimension is at
// most max_horn_dim, in deterministic order.
std::vector<SequenceStep> valid_attachments(const Sieve& s, int max_horn_dim);

// All horn-attachment paths from one sieve to a larger one (every added
// member within `to`), depth bounded by the simplex-count difference.
std::vector<std::vector<SequenceStep>> attachment_paths(const Sieve& from, const Sieve& to,
                                                        int max_horn_dim);

// All sequences extending `start` by at most max_len attachments.
std::vector<HornPushoutSequence> enumerate_sequences(const Sieve& start, int max_len,
                                                     int max_horn_dim);

// Builds the pullback square over f with the given target, taking the first
// attachment path for every gap in the pulled-back chain; nullopt when some
// gap is not a composite of horn attachments.
std::optional<SequenceSquare> pullback_square(const HornPushoutSequence& target,
                                              const MonotoneMap& f, int max_horn_dim);

// Splits a pullback square into horizontally composable face and degeneracy
// squares along the canonical generator word of f. NotFound (nullopt) is a
// legitimate outcome, not an error: decomposability is an open question, and
// the search is bounded backtracking relative to that word.
std::optional<std::vector<SequenceSquare>> decompose_horizontal(const SequenceSquare& sq);

// Chooses the filler for a generator; wraps a LiftAssignment or the signed
// pair, so extension code is agnostic of L.
using LiftProvider = std::function<Elem(const Generator&, const LiftingProblem&)>;

LiftProvider provider_from(const LiftAssignment& L);
LiftProvider provider_from(const SignedLiftAssignment& S);

// Steps through the sequence: at each step the accumulated map restricts
// along the embedding to a horn map, the provider fills it over v, and the
// filler and its m-th face are pushed out onto the two new simplices.
// u must live on seq.start(), v on seq.end() over the target, with
// alpha o u = v on the start.
SieveMap extend_lift(const SimplicialMap& alpha, const LiftProvider& provider,
                     const HornPushoutSequence& seq, const SieveMap& u, const SieveMap& v);

// The left horizontal compatibility condition on one square, swept over all
// extension data (u, v) on the target: extending the pulled-back data over
// the source must equal pulling back the extension.
CheckReport check_respects_square(const SimplicialMap& alpha, const LiftProvider& provider,
                                  const SequenceSquare& sq);

struct SquareSweepParams {
    int max_ambient = 3;
    int max_len = 2;
    int max_horn_dim = 3;
    bool signed_generators = false;  // enumerate per-sign steps (the D_pm setting)
};

// Sweeps every face square over targets within the given bounds.
CheckReport check_face_squares(const SimplicialMap& alpha, const LiftProvider& provider,
                               const SquareSweepParams& params, int jobs = 1,
                               SampleSpec sample = {});

// Sweeps every sign-respecting degeneracy square with length-1 target within
// the bounds (both face-attachment orders where the construction allows a
// choice).
CheckReport check_degeneracy_squares(const SimplicialMap& alpha, const LiftProvider& provider,
                                     const SquareSweepParams& params, int jobs = 1);

// The shape a degeneracy square's source takes when the degeneracy index
// lands inside the attached simplex: two face-horn attachments (one when
// j' = m) followed by the (n+1, m*)-horn, whose chosen generator is
// iota*_delta, carrying the sign of iota.
struct IotaStarResult {
    HornPushoutSequence source;
    Generator iota_star;
    SequenceSquare square;
};

IotaStarResult iota_star(const HornPushoutSequence& target, int j, bool attach_lower_first = true);

// The degeneracy square over s_j for a length-1 target, covering both the
// inside and outside cases; nullopt only when j is out of range.
std::optional<SequenceSquare> make_degeneracy_square(const HornPushoutSequence& target, int j,
                                                     bool attach_lower_first = true);

// One D-square instance: for a non-identity epi s and the rectangle through
// (z, f), the assignment must send the restricted problem to z o s.
CheckReport check_D_square(const SimplicialMap& alpha, const LiftAssignment& L,
                           const MonotoneMap& s, const HornSpec& iota, Elem z, Elem f);

// Exhaustive D-square sweep over all non-identity epis s : [n] -> [b] with
// n <= maxdim, all horns on [n], and all z; the independent count is the
// closed form sum of C(n, b) * (n+1) * |X_b|.
CheckReport check_D_squares(const SimplicialMap& alpha, const LiftAssignment& L, int maxdim,
                            int jobs = 1, SampleSpec sample = {});

// Members of S not strictly contained in another member.
std::vector<VertexSet> maximal_members(const Sieve& s);

// Counts the compatible maps S -> X top-down (assignments on maximal
// members whose forced restrictions agree), optionally clamped to
// prescribed values on some masks. The independent route cross-checking
// enumerate_sieve_maps.
std::uint64_t count_sieve_maps_topdown(const TruncatedSimplicialSet& X, const Sieve& s,
                                       const std::map<VertexSet, Elem>* clamp = nullptr);

std::string describe(const SequenceSquare& sq);

}  // namespace effkan
