#include "effkan/awfs.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "effkan/parallel.hpp"

namespace effkan {

namespace {

VertexSet lowest_bit(VertexSet v) {
    return v & (~v + 1);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<std::uint64_t>(n - i) / (i + 1);
    return r;
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

std::optional<std::string> sequence_error(const Sieve& start,
                                          const std::vector<SequenceStep>& steps) {
    if (!downward_closed(start)) return "start is not a sieve";
    Sieve cur = start;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const SequenceStep& step = steps[i];
        if (step.gen.sign && !sign_allows(step.gen.spec, *step.gen.sign))
            return "step " + std::to_string(i) + ": sign not allowed on this horn";
        if (auto err = attach_horn_error(cur, step.gen.spec, step.embedding))
            return "step " + std::to_string(i) + ": " + *err;
        cur = attach_horn(cur, step.gen.spec, step.embedding);
    }
    return std::nullopt;
}

HornPushoutSequence make_sequence(const Sieve& start, std::vector<SequenceStep> steps) {
    if (auto err = sequence_error(start, steps))
        throw std::invalid_argument("make_sequence: " + *err);
    HornPushoutSequence seq;
    seq.ambient = start.ambient;
    seq.chain.push_back(start);
    for (const SequenceStep& step : steps)
        seq.chain.push_back(attach_horn(seq.chain.back(), step.gen.spec, step.embedding));
    seq.steps = std::move(steps);
    return seq;
}

SquareKind classify(const SequenceSquare& sq) {
    const CanonicalFactorization fact = factorize(sq.f);
    if (fact.face_indices.size() == 1 && fact.degeneracy_indices.empty()) return SquareKind::face;
    if (fact.face_indices.empty() && fact.degeneracy_indices.size() == 1)
        return SquareKind::degeneracy;
    return SquareKind::composite;
}

std::optional<std::string> square_error(const SequenceSquare& sq) {
    if (!is_valid(sq.f)) return "underlying map invalid";
    if (sq.f.dom != sq.source.ambient || sq.f.cod != sq.target.ambient)
        return "underlying map does not match the ambients";
    const int l = sq.target.length();
    const int k = sq.source.length();
    if (static_cast<int>(sq.reindex.size()) != l + 1) return "reindex has wrong length";
    if (sq.reindex.front() != 0) return "reindex must start at 0";
    if (sq.reindex.back() != k) return "reindex must end at the source length";
    for (int i = 0; i < l; ++i)
        if (sq.reindex[static_cast<std::size_t>(i)] > sq.reindex[static_cast<std::size_t>(i) + 1])
            return "reindex not nondecreasing";
    for (int i = 0; i <= l; ++i) {
        const int s = sq.reindex[static_cast<std::size_t>(i)];
        if (pullback_sieve(sq.f, sq.target.chain[static_cast<std::size_t>(i)]) !=
            sq.source.chain[static_cast<std::size_t>(s)])
            return "pullback condition fails at position " + std::to_string(i);
    }
    return std::nullopt;
}

SequenceSquare make_square(MonotoneMap f, std::vector<int> reindex, HornPushoutSequence source,
                           HornPushoutSequence target) {
    SequenceSquare sq{std::move(f), std::move(reindex), std::move(source), std::move(target)};
    if (auto err = square_error(sq)) throw std::invalid_argument("make_square: " + *err);
    return sq;
}

SequenceSquare compose_squares_vertical(const SequenceSquare& p, const SequenceSquare& q) {
    if (p.f != q.f) throw std::invalid_argument("compose_squares_vertical: maps differ");
    if (p.source.end() != q.source.start() || p.target.end() != q.target.start())
        throw std::invalid_argument("compose_squares_vertical: sequences do not meet");
    HornPushoutSequence source = p.source;
    source.steps.insert(source.steps.end(), q.source.steps.begin(), q.source.steps.end());
    source.chain.insert(source.chain.end(), q.source.chain.begin() + 1, q.source.chain.end());
    HornPushoutSequence target = p.target;
    target.steps.insert(target.steps.end(), q.target.steps.begin(), q.target.steps.end());
    target.chain.insert(target.chain.end(), q.target.chain.begin() + 1, q.target.chain.end());
    std::vector<int> reindex = p.reindex;
    const int k = p.source.length();
    for (std::size_t i = 1; i < q.reindex.size(); ++i) reindex.push_back(k + q.reindex[i]);
    return make_square(p.f, std::move(reindex), std::move(source), std::move(target));
}

SequenceSquare compose_squares_horizontal(const SequenceSquare& inner,
                                          const SequenceSquare& outer) {
    if (inner.target != outer.source)
        throw std::invalid_argument("compose_squares_horizontal: sequences do not meet");
    std::vector<int> reindex;
    reindex.reserve(outer.reindex.size());
    for (int i : outer.reindex)
        reindex.push_back(inner.reindex.at(static_cast<std::size_t>(i)));
    return make_square(compose(outer.f, inner.f), std::move(reindex), inner.source, outer.target);
}

std::vector<SequenceStep> valid_attachments(const Sieve& s, int max_horn_dim) {
    std::vector<SequenceStep> out;
    const VertexSet all = (VertexSet{1} << (s.ambient + 1)) - 1;
    for (VertexSet mask = 1; mask <= all; ++mask) {
        const int count = std::popcount(mask);
        if (count < 2 || count - 1 > max_horn_dim) continue;
        if (s.members.count(mask)) continue;
        // need every nonempty proper subset of mask in s except exactly one
        // face of dimension count-2
        int missing_face = -1;
        bool ok = true;
        int t = 0;
        for (VertexSet v = mask; v != 0 && ok; v &= v - 1, ++t) {
            const VertexSet sub = mask & ~lowest_bit(v);
            if (sub != 0 && !s.members.count(sub)) {
                if (missing_face >= 0) ok = false;
                missing_face = t;
            }
        }
        if (!ok || missing_face < 0) continue;
        // lower-dimensional subsets must all be present
        for (VertexSet sub = (mask - 1) & mask; sub != 0 && ok; sub = (sub - 1) & mask) {
            if (std::popcount(sub) >= count - 1) continue;
            if (!s.members.count(sub)) ok = false;
        }
        if (!ok) continue;
        out.push_back(SequenceStep{Generator{HornSpec{count - 1, missing_face}, std::nullopt},
                                   mono_from_vertices(mask, s.ambient)});
    }
    return out;
}

std::vector<std::vector<SequenceStep>> attachment_paths(const Sieve& from, const Sieve& to,
                                                        int max_horn_dim) {
    std::vector<std::vector<SequenceStep>> out;
    if (!std::includes(to.members.begin(), to.members.end(), from.members.begin(),
                       from.members.end()))
        return out;
    std::vector<SequenceStep> path;
    auto rec = [&](auto&& self, const Sieve& cur) -> void {
        if (cur == to) {
            out.push_back(path);
            return;
        }
        for (const SequenceStep& step : valid_attachments(cur, max_horn_dim)) {
            if (!to.members.count(map_image(step.embedding))) continue;
            path.push_back(step);
            self(self, attach_horn(cur, step.gen.spec, step.embedding));
            path.pop_back();
        }
    };
    rec(rec, from);
    return out;
}

std::vector<HornPushoutSequence> enumerate_sequences(const Sieve& start, int max_len,
                                                     int max_horn_dim) {
    std::vector<HornPushoutSequence> out;
    std::vector<SequenceStep> steps;
    auto rec = [&](auto&& self, const Sieve& cur, int depth) -> void {
        out.push_back(make_sequence(start, steps));
        if (depth == max_len) return;
        for (const SequenceStep& step : valid_attachments(cur, max_horn_dim)) {
            steps.push_back(step);
            self(self, attach_horn(cur, step.gen.spec, step.embedding), depth + 1);
            steps.pop_back();
        }
    };
    rec(rec, start, 0);
    return out;
}

std::optional<SequenceSquare> pullback_square(const HornPushoutSequence& target,
                                              const MonotoneMap& f, int max_horn_dim) {
    std::vector<Sieve> pulled;
    pulled.reserve(target.chain.size());
    for (const Sieve& t : target.chain) pulled.push_back(pullback_sieve(f, t));
    std::vector<SequenceStep> steps;
    std::vector<int> reindex{0};
    for (std::size_t i = 0; i + 1 < pulled.size(); ++i) {
        if (pulled[i] != pulled[i + 1]) {
            const auto paths = attachment_paths(pulled[i], pulled[i + 1], max_horn_dim);
            if (paths.empty()) return std::nullopt;
            steps.insert(steps.end(), paths.front().begin(), paths.front().end());
        }
        reindex.push_back(static_cast<int>(steps.size()));
    }
    return make_square(f, std::move(reindex), make_sequence(pulled.front(), std::move(steps)),
                       target);
}

namespace {

// one generator of f's canonical word, outermost first, with its level
struct WordEntry {
    bool face;
    int index;
    MonotoneMap map;
};

std::vector<WordEntry> generator_word(const MonotoneMap& f) {
    const CanonicalFactorization fact = factorize(f);
    std::vector<WordEntry> word;
    int cod = f.cod;
    for (auto it = fact.face_indices.rbegin(); it != fact.face_indices.rend(); ++it) {
        word.push_back(WordEntry{true, *it, face_map(cod - 1, *it)});
        --cod;
    }
    for (int j : fact.degeneracy_indices) {
        word.push_back(WordEntry{false, j, degeneracy_map(cod, j)});
        ++cod;
    }
    return word;
}

constexpr int kDecomposeBudget = 20000;

// Searches for the intermediate sequences peeling one generator at a time
// from the target side. Appends the found squares outermost-first.
bool decompose_rec(const HornPushoutSequence& source, const std::vector<int>& mu,
                   const HornPushoutSequence& target, const std::vector<WordEntry>& word,
                   std::size_t t, int max_horn_dim, int& budget,
                   std::vector<SequenceSquare>& out) {
    if (budget-- <= 0) return false;
    if (t == word.size()) {
        if (source != target) return false;
        for (std::size_t i = 0; i < mu.size(); ++i)
            if (mu[i] != static_cast<int>(i)) return false;
        return true;
    }
    const WordEntry& g = word[t];
    // remaining inner composite h = word[t+1] o ... o word[last]
    MonotoneMap h = identity_map(g.map.dom);
    for (std::size_t r = t + 1; r < word.size(); ++r) h = compose(h, word[r].map);

    // candidate intermediate chains pass through the pullbacks of the target
    // chain in order; search over attachment paths for every gap
    std::vector<Sieve> pulled;
    for (const Sieve& s : target.chain) pulled.push_back(pullback_sieve(g.map, s));

    std::vector<std::vector<std::vector<SequenceStep>>> gap_paths;
    for (std::size_t i = 0; i + 1 < pulled.size(); ++i) {
        if (pulled[i] == pulled[i + 1]) {
            gap_paths.push_back({{}});
        } else {
            auto paths = attachment_paths(pulled[i], pulled[i + 1], max_horn_dim);
            if (paths.empty()) return false;
            gap_paths.push_back(std::move(paths));
        }
    }

    std::vector<std::size_t> choice(gap_paths.size(), 0);
    while (true) {
        if (budget <= 0) return false;
        std::vector<SequenceStep> steps;
        std::vector<int> mu1{0};
        for (std::size_t i = 0; i < gap_paths.size(); ++i) {
            const auto& p = gap_paths[i][choice[i]];
            steps.insert(steps.end(), p.begin(), p.end());
            mu1.push_back(static_cast<int>(steps.size()));
        }
        HornPushoutSequence omega = make_sequence(pulled.front(), steps);
        // mu2 : positions of h-pullbacks of omega's chain within source's chain
        bool ok = true;
        std::vector<int> mu2;
        for (const Sieve& w : omega.chain) {
            const Sieve back = pullback_sieve(h, w);
            const auto it = std::find(source.chain.begin(), source.chain.end(), back);
            if (it == source.chain.end()) {
                ok = false;
                break;
            }
            mu2.push_back(static_cast<int>(it - source.chain.begin()));
        }
        if (ok && (mu2.front() != 0 || mu2.back() != source.length())) ok = false;
        if (ok) {
            for (std::size_t i = 0; i + 1 < mu2.size(); ++i)
                if (mu2[i] > mu2[i + 1]) ok = false;
        }
        if (ok) {
            // composed reindex must reproduce mu
            for (std::size_t i = 0; i < mu.size(); ++i)
                if (mu2[static_cast<std::size_t>(mu1[i])] != mu[i]) ok = false;
        }
        if (ok) {
            std::vector<SequenceSquare> rest;
            if (decompose_rec(source, mu2, omega, word, t + 1, max_horn_dim, budget, rest)) {
                out.push_back(make_square(g.map, mu1, omega, target));
                out.insert(out.end(), rest.begin(), rest.end());
                return true;
            }
        }
        // next choice combination
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (++choice[i] < gap_paths[i].size()) break;
            choice[i] = 0;
        }
        if (i == choice.size()) return false;
    }
}

}  // namespace

std::optional<std::vector<SequenceSquare>> decompose_horizontal(const SequenceSquare& sq) {
    if (auto err = square_error(sq)) throw std::invalid_argument("decompose_horizontal: " + *err);
    int max_horn_dim = 1;
    for (const Sieve& s : sq.source.chain)
        for (VertexSet m : s.members) max_horn_dim = std::max(max_horn_dim, std::popcount(m) - 1);
    for (const Sieve& s : sq.target.chain)
        for (VertexSet m : s.members) max_horn_dim = std::max(max_horn_dim, std::popcount(m) - 1);
    const std::vector<WordEntry> word = generator_word(sq.f);
    std::vector<SequenceSquare> out;
    int budget = kDecomposeBudget;
    if (decompose_rec(sq.source, sq.reindex, sq.target, word, 0, max_horn_dim, budget, out))
        return out;
    return std::nullopt;
}

LiftProvider provider_from(const LiftAssignment& L) {
    return [&L](const Generator&, const LiftingProblem& p) { return L.at(p); };
}

LiftProvider provider_from(const SignedLiftAssignment& S) {
    return [&S](const Generator& gen, const LiftingProblem& p) {
        if (!gen.sign) throw std::invalid_argument("signed lifts need a signed generator");
        return signed_table(S, *gen.sign).at(p);
    };
}

SieveMap extend_lift(const SimplicialMap& alpha, const LiftProvider& provider,
                     const HornPushoutSequence& seq, const SieveMap& u, const SieveMap& v) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const TruncatedSimplicialSet& Y = *alpha.target;
    if (u.domain != seq.start()) throw std::invalid_argument("extend_lift: u not on the start sieve");
    if (v.domain != seq.end()) throw std::invalid_argument("extend_lift: v not on the end sieve");
    if (auto err = sieve_map_error(X, u)) throw std::invalid_argument("extend_lift: u: " + *err);
    if (auto err = sieve_map_error(Y, v)) throw std::invalid_argument("extend_lift: v: " + *err);
    for (const auto& [mask, val] : u.values)
        if (alpha.apply(std::popcount(mask) - 1, val) != v.values.at(mask))
            throw std::invalid_argument("extend_lift: alpha o u and v disagree on the start");
    for (const SequenceStep& step : seq.steps)
        if (step.gen.spec.n > X.truncation)
            throw std::out_of_range("extend_lift: step horn dimension exceeds truncation");

    SieveMap acc = u;
    for (const SequenceStep& step : seq.steps) {
        const int n = step.gen.spec.n;
        const int m = step.gen.spec.m;
        const MonotoneMap& e = step.embedding;
        HornMap horn{step.gen.spec, std::vector<Elem>(static_cast<std::size_t>(n) + 1, kNoElem)};
        for (int k = 0; k <= n; ++k) {
            if (k == m) continue;
            horn.facets[static_cast<std::size_t>(k)] =
                evaluate_sieve_map(X, acc, compose(e, face_map(n - 1, k)));
        }
        const LiftingProblem problem{horn, evaluate_sieve_map(Y, v, e)};
        const Elem filler = provider(step.gen, problem);
        acc.domain = attach_horn(acc.domain, step.gen.spec, e);
        acc.values[map_image(e)] = filler;
        acc.values[map_image(compose(e, face_map(n - 1, m)))] =
            act(X, n, filler, face_map(n - 1, m));
    }
    return acc;
}

CheckReport check_respects_square(const SimplicialMap& alpha, const LiftProvider& provider,
                                  const SequenceSquare& sq) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const TruncatedSimplicialSet& Y = *alpha.target;
    CheckReport report;
    report.checker = "respects-square";
    const auto us = enumerate_sieve_maps(X, sq.target.start());
    const auto vs = enumerate_sieve_maps(Y, sq.target.end());
    for (const SieveMap& u : us) {
        std::map<VertexSet, Elem> clamp;
        for (const auto& [mask, val] : u.values)
            clamp.emplace(mask, alpha.apply(std::popcount(mask) - 1, val));
        report.independent_count += count_sieve_maps_topdown(Y, sq.target.end(), &clamp);
        for (const SieveMap& v : vs) {
            bool matches = true;
            for (const auto& [mask, val] : clamp)
                if (v.values.at(mask) != val) {
                    matches = false;
                    break;
                }
            if (!matches) continue;
            ++report.instances;
            // a broken lift structure can fail to define one of the
            // extensions at all; that counts as not respecting the square
            try {
                const SieveMap pulled_u = pullback_sieve_map(X, u, sq.f);
                const SieveMap pulled_v = pullback_sieve_map(Y, v, sq.f);
                const SieveMap lhs = extend_lift(alpha, provider, sq.source, pulled_u, pulled_v);
                const SieveMap rhs =
                    pullback_sieve_map(X, extend_lift(alpha, provider, sq.target, u, v), sq.f);
                if (lhs != rhs)
                    report.failures.push_back(describe(sq) + " : extension of pulled-back data " +
                                              "differs from pullback of extension (datum " +
                                              std::to_string(report.instances - 1) + ")");
            } catch (const std::exception& e) {
                report.failures.push_back(describe(sq) + " : extension undefined (" +
                                          std::string(e.what()) + ") (datum " +
                                          std::to_string(report.instances - 1) + ")");
            }
        }
    }
    finalize(report);
    return report;
}

namespace {

std::vector<HornPushoutSequence> sweep_targets(const SquareSweepParams& params, int ambient,
                                               int truncation) {
    const int horn_dim = std::min(params.max_horn_dim, truncation);
    std::vector<HornPushoutSequence> out;
    for (const Sieve& start : enumerate_sieves(ambient)) {
        bool within = true;
        for (VertexSet m : start.members)
            if (std::popcount(m) - 1 > truncation) within = false;
        if (!within) continue;
        for (HornPushoutSequence& seq : enumerate_sequences(start, params.max_len, horn_dim))
            if (seq.length() >= 1) out.push_back(std::move(seq));
    }
    return out;
}

// re-tags the steps of a sequence with the given signs, step by step
HornPushoutSequence with_signs(const HornPushoutSequence& seq, const std::vector<char>& signs) {
    HornPushoutSequence out = seq;
    for (std::size_t i = 0; i < out.steps.size(); ++i) out.steps[i].gen.sign = signs[i];
    return out;
}

// all sign choices for a sequence's steps
std::vector<std::vector<char>> sign_choices(const HornPushoutSequence& seq) {
    std::vector<std::vector<char>> out{{}};
    for (const SequenceStep& step : seq.steps) {
        std::vector<std::vector<char>> next;
        for (char sign : {'+', '-'}) {
            if (!sign_allows(step.gen.spec, sign)) continue;
            for (std::vector<char> prefix : out) {
                prefix.push_back(sign);
                next.push_back(std::move(prefix));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

CheckReport check_face_squares(const SimplicialMap& alpha, const LiftProvider& provider,
                               const SquareSweepParams& params, int jobs, SampleSpec sample) {
    const int truncation = alpha.source->truncation;
    std::vector<SequenceSquare> squares;
    for (int ambient = 1; ambient <= params.max_ambient; ++ambient) {
        for (const HornPushoutSequence& target : sweep_targets(params, ambient, truncation)) {
            for (int c = 0; c <= ambient; ++c) {
                auto sq = pullback_square(target, face_map(ambient - 1, c), params.max_horn_dim);
                if (!sq) continue;
                if (!params.signed_generators) {
                    squares.push_back(std::move(*sq));
                } else {
                    for (const auto& target_signs : sign_choices(target)) {
                        SequenceSquare signed_sq = *sq;
                        signed_sq.target = with_signs(sq->target, target_signs);
                        // source steps pull back the target's attachments one
                        // by one; copy the sign of the step they come from
                        std::vector<char> source_signs;
                        for (std::size_t i = 0; i + 1 < sq->reindex.size(); ++i)
                            for (int r = sq->reindex[i]; r < sq->reindex[i + 1]; ++r)
                                source_signs.push_back(target_signs[i]);
                        signed_sq.source = with_signs(sq->source, source_signs);
                        squares.push_back(std::move(signed_sq));
                    }
                }
            }
        }
    }
    apply_sample(squares, sample);
    CheckReport report;
    report.checker = "facesquares";
    std::vector<CheckReport> subs(squares.size());
    sweep_failures(squares.size(), jobs, [&](std::uint64_t i) {
        subs[i] = check_respects_square(alpha, provider, squares[i]);
        return std::vector<std::string>{};
    });
    for (const CheckReport& sub : subs) {
        report.instances += sub.instances;
        report.independent_count += sub.independent_count;
        report.failures.insert(report.failures.end(), sub.failures.begin(), sub.failures.end());
    }
    finalize(report);
    return report;
}

IotaStarResult iota_star(const HornPushoutSequence& target, int j, bool attach_lower_first) {
    if (target.length() != 1) throw std::invalid_argument("iota_star: target must have length 1");
    const SequenceStep& step = target.steps.front();
    const int b = target.ambient;
    const int n = step.gen.spec.n;
    const int m = step.gen.spec.m;
    if (j < 0 || j > b) throw std::invalid_argument("iota_star: j out of range");
    const VertexSet image = map_image(step.embedding);
    if ((image & (VertexSet{1} << j)) == 0)
        throw std::invalid_argument("iota_star: j does not factor through the embedded simplex");

    const MonotoneMap sj = degeneracy_map(b, j);
    // the embedded Delta^{n+1}: preimage of the embedded simplex under s_j
    VertexSet star_image = 0;
    int jp = 0;  // s_j restricted to the embedded simplex is s_{j'}
    {
        int local = 0;
        for (int v : vertex_list(image)) {
            if (v < j) {
                star_image |= VertexSet{1} << v;
            } else if (v == j) {
                star_image |= VertexSet{3} << j;
                jp = local;
            } else {
                star_image |= VertexSet{1} << (v + 1);
            }
            ++local;
        }
    }
    const MonotoneMap estar = mono_from_vertices(star_image, b + 1);

    const auto face_attach = [&](int c) {
        return SequenceStep{Generator{HornSpec{n, m}, step.gen.sign},
                            compose(estar, face_map(n, c))};
    };
    std::vector<SequenceStep> steps;
    Generator last;
    if (jp == m) {
        const int c = attach_lower_first ? jp : jp + 1;
        const int mstar = attach_lower_first ? jp + 1 : jp;
        steps.push_back(face_attach(c));
        last = Generator{HornSpec{n + 1, mstar}, step.gen.sign};
        steps.push_back(SequenceStep{last, estar});
    } else {
        const int first = attach_lower_first ? jp : jp + 1;
        const int second = attach_lower_first ? jp + 1 : jp;
        const int mstar = m < jp ? m : m + 1;
        steps.push_back(face_attach(first));
        steps.push_back(face_attach(second));
        last = Generator{HornSpec{n + 1, mstar}, step.gen.sign};
        steps.push_back(SequenceStep{last, estar});
    }
    HornPushoutSequence source = make_sequence(pullback_sieve(sj, target.start()), steps);
    SequenceSquare square =
        make_square(sj, {0, source.length()}, source, target);
    return IotaStarResult{std::move(source), last, std::move(square)};
}

std::optional<SequenceSquare> make_degeneracy_square(const HornPushoutSequence& target, int j,
                                                     bool attach_lower_first) {
    if (target.length() != 1) throw std::invalid_argument("make_degeneracy_square: length-1 target");
    const int b = target.ambient;
    if (j < 0 || j > b) return std::nullopt;
    const SequenceStep& step = target.steps.front();
    const VertexSet image = map_image(step.embedding);
    if (image & (VertexSet{1} << j)) return iota_star(target, j, attach_lower_first).square;
    // j outside the embedded simplex: the attachment pulls back unchanged
    const MonotoneMap sj = degeneracy_map(b, j);
    MonotoneMap shifted{step.embedding.dom, b + 1, {}};
    for (int v : step.embedding.values) shifted.values.push_back(v < j ? v : v + 1);
    HornPushoutSequence source = make_sequence(pullback_sieve(sj, target.start()),
                                               {SequenceStep{step.gen, shifted}});
    return make_square(sj, {0, 1}, std::move(source), target);
}

CheckReport check_degeneracy_squares(const SimplicialMap& alpha, const LiftProvider& provider,
                                     const SquareSweepParams& params, int jobs) {
    const int truncation = alpha.source->truncation;
    std::vector<SequenceSquare> squares;
    SquareSweepParams len1 = params;
    len1.max_len = 1;
    for (int ambient = 1; ambient <= params.max_ambient; ++ambient) {
        for (const HornPushoutSequence& plain : sweep_targets(len1, ambient, truncation)) {
            // the pulled sequence attaches one dimension up
            if (plain.steps.front().gen.spec.n + 1 > std::min(params.max_horn_dim + 1, truncation))
                continue;
            std::vector<HornPushoutSequence> targets;
            if (!params.signed_generators) {
                targets.push_back(plain);
            } else {
                for (const auto& signs : sign_choices(plain)) targets.push_back(with_signs(plain, signs));
            }
            for (const HornPushoutSequence& target : targets) {
                for (int j = 0; j <= ambient; ++j) {
                    for (bool lower : {true, false}) {
                        auto sq = make_degeneracy_square(target, j, lower);
                        if (!sq) continue;
                        // the outside case does not depend on the order flag
                        if (!lower && sq->source.length() == 1) continue;
                        squares.push_back(std::move(*sq));
                    }
                }
            }
        }
    }
    CheckReport report;
    report.checker = "degeneracysquares";
    std::vector<CheckReport> subs(squares.size());
    sweep_failures(squares.size(), jobs, [&](std::uint64_t i) {
        subs[i] = check_respects_square(alpha, provider, squares[i]);
        return std::vector<std::string>{};
    });
    for (const CheckReport& sub : subs) {
        report.instances += sub.instances;
        report.independent_count += sub.independent_count;
        report.failures.insert(report.failures.end(), sub.failures.begin(), sub.failures.end());
    }
    finalize(report);
    return report;
}

CheckReport check_D_square(const SimplicialMap& alpha, const LiftAssignment& L,
                           const MonotoneMap& s, const HornSpec& iota, Elem z, Elem f) {
    const TruncatedSimplicialSet& X = *alpha.source;
    const TruncatedSimplicialSet& Y = *alpha.target;
    if (!is_valid(s) || !is_epi(s) || s.dom == s.cod)
        throw std::invalid_argument("check_D_square: s must be a non-identity epi");
    if (iota.n != s.dom) throw std::invalid_argument("check_D_square: horn does not match s");
    if (z >= X.size(s.cod) || f >= Y.size(s.cod))
        throw std::invalid_argument("check_D_square: element out of range");
    if (alpha.apply(s.cod, z) != f)
        throw std::invalid_argument("check_D_square: rectangle does not commute");
    const int n = iota.n;
    const Elem zs = act(X, s.cod, z, s);
    HornMap horn{iota, std::vector<Elem>(static_cast<std::size_t>(n) + 1, kNoElem)};
    for (int k = 0; k <= n; ++k) {
        if (k == iota.m) continue;
        horn.facets[static_cast<std::size_t>(k)] = act(X, n, zs, face_map(n - 1, k));
    }
    const LiftingProblem p{horn, act(Y, s.cod, f, s)};
    CheckReport report;
    report.checker = "dsquare";
    report.instances = 1;
    report.independent_count = 1;
    const Elem got = L.at(p);
    if (got != zs)
        report.failures.push_back("s=" + to_string(s) + " horn(" + std::to_string(n) + "," +
                                  std::to_string(iota.m) + ") z=" + X.name(s.cod, z) +
                                  " : lift(z o s o iota, f o s) = " + X.name(n, got) +
                                  " but z o s = " + X.name(n, zs));
    return report;
}

CheckReport check_D_squares(const SimplicialMap& alpha, const LiftAssignment& L, int maxdim,
                            int jobs, SampleSpec sample) {
    if (maxdim > L.bound)
        throw std::invalid_argument("check_D_squares: assignment bound too small");
    const TruncatedSimplicialSet& X = *alpha.source;
    struct Instance {
        MonotoneMap s;
        HornSpec iota;
        Elem z;
    };
    std::vector<Instance> instances;
    std::uint64_t independent = 0;
    for (int n = 1; n <= maxdim; ++n) {
        for (int b = 0; b < n; ++b) {
            independent += binomial(n, b) * (static_cast<std::uint64_t>(n) + 1) * X.size(b);
            for (const MonotoneMap& s : enumerate_monotone_maps(n, b)) {
                if (!is_epi(s)) continue;
                for (int m = 0; m <= n; ++m)
                    for (Elem z = 0; z < X.size(b); ++z)
                        instances.push_back(Instance{s, HornSpec{n, m}, z});
            }
        }
    }
    apply_sample(instances, sample);
    CheckReport report;
    report.checker = "dsquares";
    report.instances = instances.size();
    report.independent_count = independent;
    report.failures = sweep_failures(instances.size(), jobs, [&](std::uint64_t i) {
        const Instance& inst = instances[i];
        const Elem f = alpha.apply(inst.s.cod, inst.z);
        return check_D_square(alpha, L, inst.s, inst.iota, inst.z, f).failures;
    });
    finalize(report);
    return report;
}

std::vector<VertexSet> maximal_members(const Sieve& s) {
    std::vector<VertexSet> out;
    for (VertexSet m : s.members) {
        bool maximal = true;
        for (VertexSet other : s.members)
            if (other != m && (m & other) == m) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(m);
    }
    return out;
}

std::uint64_t count_sieve_maps_topdown(const TruncatedSimplicialSet& X, const Sieve& s,
                                       const std::map<VertexSet, Elem>* clamp) {
    const std::vector<VertexSet> tops = maximal_members(s);
    if (tops.empty()) return s.members.empty() ? 1 : 0;
    std::vector<Elem> assignment(tops.size(), 0);
    std::uint64_t count = 0;

    // the value forced on `sub` by the value at a maximal member containing it
    auto forced = [&](VertexSet top, Elem val, VertexSet sub) {
        const std::vector<int> top_verts = vertex_list(top);
        const std::vector<int> sub_verts = vertex_list(sub);
        MonotoneMap rel{static_cast<int>(sub_verts.size()) - 1,
                        static_cast<int>(top_verts.size()) - 1, {}};
        for (int v : sub_verts)
            rel.values.push_back(static_cast<int>(
                std::lower_bound(top_verts.begin(), top_verts.end(), v) - top_verts.begin()));
        return act(X, static_cast<int>(top_verts.size()) - 1, val, rel);
    };

    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == tops.size()) {
            // every member value must be forced consistently
            for (VertexSet member : s.members) {
                std::optional<Elem> value;
                for (std::size_t i = 0; i < tops.size(); ++i) {
                    if ((member & tops[i]) != member) continue;
                    const Elem v = forced(tops[i], assignment[i], member);
                    if (!value) value = v;
                    else if (*value != v) return;
                }
                if (clamp) {
                    const auto it = clamp->find(member);
                    if (it != clamp->end() && value && *value != it->second) return;
                }
            }
            ++count;
            return;
        }
        const int level = std::popcount(tops[idx]) - 1;
        for (Elem x = 0; x < X.size(level); ++x) {
            assignment[idx] = x;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    return count;
}

std::string describe(const SequenceSquare& sq) {
    std::string kind;
    switch (classify(sq)) {
        case SquareKind::face: kind = "face"; break;
        case SquareKind::degeneracy: kind = "degeneracy"; break;
        case SquareKind::composite: kind = "composite"; break;
    }
    return kind + " square f=" + to_string(sq.f) + " target_start=" + to_string(sq.target.start()) +
           " target_len=" + std::to_string(sq.target.length()) +
           " source_len=" + std::to_string(sq.source.length());
}

}  // namespace effkan
