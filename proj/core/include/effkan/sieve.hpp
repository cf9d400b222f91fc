#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "effkan/delta.hpp"

namespace effkan {

// A set of vertices of [a], encoded as a bitmask. Ambients are capped at 62
// so every subset of {0..ambient} fits into one word.
using VertexSet = std::uint64_t;

inline constexpr int kMaxAmbient = 62;

VertexSet map_image(const MonotoneMap& f);
int vertex_count(VertexSet s);
std::vector<int> vertex_list(VertexSet s);

// The mono [r] -> [ambient] whose image is exactly `verts` (nonempty).
MonotoneMap mono_from_vertices(VertexSet verts, int ambient);

struct HornSpec {
    int n = 1;  // dimension, >= 1 (0-horns do not exist)
    int m = 0;  // missing face, 0 <= m <= n

    auto operator<=>(const HornSpec&) const = default;
};

bool horn_spec_valid(const HornSpec& spec);

// A decidable sieve of Delta^ambient: a downward-closed set of nonempty
// vertex subsets, one per non-degenerate simplex that factors through it.
struct Sieve {
    int ambient = 0;
    std::set<VertexSet> members;

    bool operator==(const Sieve&) const = default;
};

bool downward_closed(const Sieve& s);

Sieve empty_sieve(int ambient);
Sieve full_sieve(int ambient);  // Delta^ambient itself

// All nonempty subsets of `verts`, as a sieve of Delta^ambient.
Sieve simplex_sieve(int ambient, VertexSet verts);

// The k-th face of Delta^n: all nonempty subsets of {0..n} minus {k}.
Sieve face_sieve(int n, int k);

// Lambda^n_m: the union of all faces of Delta^n except the m-th.
Sieve horn_sieve(const HornSpec& spec);

Sieve sieve_union(const Sieve& s, const Sieve& t);
Sieve sieve_intersect(const Sieve& s, const Sieve& t);

// Does p : Delta^m -> Delta^ambient factor through S?
bool factors_through(const MonotoneMap& p, const Sieve& s);

// f^*(T) for f : [a] -> [b] and T a sieve of Delta^b: the subsets of {0..a}
// whose image under f lies in T.
Sieve pullback_sieve(const MonotoneMap& f, const Sieve& t);

std::size_t nondegenerate_count(const Sieve& s);

// Reason the attachment is rejected, or nullopt when it is valid: e must be
// a mono [n] -> [ambient] and the pullback of S along e must equal the horn.
std::optional<std::string> attach_horn_error(const Sieve& s, const HornSpec& spec,
                                             const MonotoneMap& e);

// S united with all nonempty subsets of e({0..n}); adds exactly two
// non-degenerate simplices. Throws std::invalid_argument when the pullback
// condition fails.
Sieve attach_horn(const Sieve& s, const HornSpec& spec, const MonotoneMap& e);

// Every downward-closed set of nonempty subsets of {0..ambient}, in a
// deterministic order. Meant for exhaustive sweeps at small ambient.
std::vector<Sieve> enumerate_sieves(int ambient);

std::string to_string(const Sieve& s);

}  // namespace effkan
