#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "effkan/delta.hpp"

namespace effkan {

// Index of an element in a level carrier.
using Elem = std::size_t;
inline constexpr Elem kNoElem = static_cast<Elem>(-1);

// A ternary Malcev operation per level, each table flattened as
// ((x * size + y) * size + z).
struct MalcevStructure {
    std::vector<std::vector<Elem>> mu;
};

// A simplicial set truncated at level N, with finite named carriers and
// explicit face/degeneracy tables. Elements are opaque tokens; all structure
// lives in the tables. Immutable after construction.
struct TruncatedSimplicialSet {
    int truncation = 0;                                        // N
    std::vector<std::vector<std::string>> names;               // [n][x]
    std::vector<std::vector<std::vector<Elem>>> faces;         // [n][i][x], 1 <= n <= N, 0 <= i <= n
    std::vector<std::vector<std::vector<Elem>>> degeneracies;  // [n][i][x], 0 <= n < N, 0 <= i <= n
    std::optional<MalcevStructure> malcev;

    std::size_t size(int n) const { return names.at(static_cast<std::size_t>(n)).size(); }
    Elem face(int n, int i, Elem x) const;        // d_i : X_n -> X_{n-1}
    Elem degeneracy(int n, int i, Elem x) const;  // s_i : X_n -> X_{n+1}
    Elem mu(int n, Elem x, Elem y, Elem z) const;
    const std::string& name(int n, Elem x) const;
    std::optional<Elem> find(int n, std::string_view name) const;
};

// x o f for x in X_n and f : [m] -> [n]: the contravariant presheaf action,
// computed through the canonical factorization of f. The simplicial
// identities (checked by validate) make the value independent of the
// factorization chosen.
Elem act(const TruncatedSimplicialSet& X, int n, Elem x, const MonotoneMap& f);

struct ValidationReport {
    std::uint64_t instances = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Exhaustively checks every simplicial identity instance within the
// truncation on every element, plus the Malcev axioms and mu-naturality when
// a Malcev structure is present. Violations are report content, not errors.
ValidationReport validate(const TruncatedSimplicialSet& X);

// A levelwise map of truncated simplicial sets. `algebraic` declares that it
// also commutes with the Malcev operations; validate checks the claim.
// Non-owning: source and target must outlive the map.
struct SimplicialMap {
    const TruncatedSimplicialSet* source = nullptr;
    const TruncatedSimplicialSet* target = nullptr;
    std::vector<std::vector<Elem>> components;  // [n][x]
    bool algebraic = false;

    Elem apply(int n, Elem x) const;
};

ValidationReport validate(const SimplicialMap& f);

// beta_n : Y_n -> X_n with alpha_n o beta_n = id and
// beta_{n+1}(s_k(y)) = s_k(beta_n(y)).
struct DegeneracySection {
    std::vector<std::vector<Elem>> beta;  // [n][y]

    Elem apply(int n, Elem y) const;
};

ValidationReport validate_section(const SimplicialMap& alpha, const DegeneracySection& beta);

// A finite Malcev algebra given by its table.
struct FiniteMalcevAlgebra {
    std::vector<std::string> names;
    std::vector<Elem> mu;  // flattened size^3

    std::size_t size() const { return names.size(); }
    Elem apply(Elem x, Elem y, Elem z) const;

    static FiniteMalcevAlgebra cyclic(int k);     // Z/k with mu(x,y,z) = x - y + z
    static FiniteMalcevAlgebra heyting2();        // two-element Heyting algebra
    static FiniteMalcevAlgebra singleton();       // {*}, mu(*,*,*) = *
};

std::optional<std::string> malcev_axiom_violation(const FiniteMalcevAlgebra& M);

struct FiniteAbelianGroup {
    std::vector<std::string> names;
    std::vector<Elem> add;  // flattened size^2
    Elem zero = 0;

    std::size_t size() const { return names.size(); }
    Elem plus(Elem x, Elem y) const;
    Elem neg(Elem x) const;

    static FiniteAbelianGroup cyclic(int k);
};

std::optional<std::string> abelian_group_violation(const FiniteAbelianGroup& A);

// The constant simplicial algebra on M: every carrier is M, all faces and
// degeneracies the identity, mu levelwise M's operation.
TruncatedSimplicialSet constant_algebra(const FiniteMalcevAlgebra& M, int N);

// The nerve of a finite abelian group, truncated at N: carrier at level n is
// A^n, faces sum adjacent entries or drop the ends, degeneracies insert the
// unit, mu componentwise x - y + z. Abelian so the faces are homomorphisms
// and mu is natural.
TruncatedSimplicialSet nerve_abelian(const FiniteAbelianGroup& A, int N);

// The unique map X -> point, declared algebraic when both carry mu.
SimplicialMap to_terminal(const TruncatedSimplicialSet& X, const TruncatedSimplicialSet& point);

// beta_n(*) = (s_0)^n(x0): the degeneracy-section of X -> point picked out
// by a vertex of an inhabited algebra.
DegeneracySection section_from_point(const TruncatedSimplicialSet& X, Elem x0);

}  // namespace effkan
