#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace effkan {

// A morphism [a] -> [b] of the simplex category, stored as its full value
// sequence. Equality is value equality; generator words are never stored.
struct MonotoneMap {
    int dom = 0;              // source object [dom]
    int cod = 0;              // target object [cod]
    std::vector<int> values;  // length dom+1, nondecreasing, entries in 0..cod

    int operator()(int k) const { return values.at(static_cast<std::size_t>(k)); }
    auto operator<=>(const MonotoneMap&) const = default;
};

bool is_valid(const MonotoneMap& f);
bool is_mono(const MonotoneMap& f);
bool is_epi(const MonotoneMap& f);

MonotoneMap identity_map(int n);

// d_i : [n] -> [n+1], the injection skipping over i. Allowed range is
// 0 <= i <= n+1, so the faces of Delta^{n+1} are face_map(n, 0..n+1).
MonotoneMap face_map(int n, int i);

// s_i : [n+1] -> [n], hitting i twice. 0 <= i <= n.
MonotoneMap degeneracy_map(int n, int i);

// compose(g, f) means "g after f"; requires cod(f) == dom(g).
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

// Epi-mono factorization data. Reading in application order (innermost
// first), the map equals: the degeneracies s_j for j in degeneracy_indices,
// largest index applied first, followed by the faces d_i for i in
// face_indices, smallest index applied first. Equivalently
//   f = d_{i_p} o ... o d_{i_1} o s_{j_1} o ... o s_{j_q}
// for face_indices = {i_1 < ... < i_p} (the cod values missed by f) and
// degeneracy_indices = {j_1 < ... < j_q} (positions with f(j) = f(j+1)).
struct CanonicalFactorization {
    int dom = 0;
    int cod = 0;
    std::vector<int> face_indices;        // strictly increasing
    std::vector<int> degeneracy_indices;  // strictly increasing

    auto operator<=>(const CanonicalFactorization&) const = default;
};

CanonicalFactorization factorize(const MonotoneMap& f);
MonotoneMap recompose(const CanonicalFactorization& fact);

// All monotone maps [a] -> [b], ordered lexicographically by value sequence.
std::vector<MonotoneMap> enumerate_monotone_maps(int a, int b);

std::string to_string(const MonotoneMap& f);

struct IdentityCheckReport {
    std::uint64_t instances = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Exhaustively verifies the three simplicial identity families by composing
// maps, for every index choice at base level n <= maxN. A violation would be
// a library bug; it is reported, never silently passed.
IdentityCheckReport check_simplicial_identities(int maxN);

}  // namespace effkan
