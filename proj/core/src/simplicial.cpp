#include "effkan/simplicial.hpp"

#include <stdexcept>

namespace effkan {

namespace {

std::size_t mu_index(std::size_t size, Elem x, Elem y, Elem z) {
    return (x * size + y) * size + z;
}

void require_level(const TruncatedSimplicialSet& X, int n) {
    if (n < 0 || n > X.truncation)
        throw std::out_of_range("level " + std::to_string(n) + " out of truncation range 0.." +
                                std::to_string(X.truncation));
}

}  // namespace

Elem TruncatedSimplicialSet::face(int n, int i, Elem x) const {
    return faces.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i)).at(x);
}

Elem TruncatedSimplicialSet::degeneracy(int n, int i, Elem x) const {
    return degeneracies.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i)).at(x);
}

Elem TruncatedSimplicialSet::mu(int n, Elem x, Elem y, Elem z) const {
    if (!malcev) throw std::logic_error("simplicial set carries no Malcev structure");
    const std::size_t s = size(n);
    return malcev->mu.at(static_cast<std::size_t>(n)).at(mu_index(s, x, y, z));
}

const std::string& TruncatedSimplicialSet::name(int n, Elem x) const {
    return names.at(static_cast<std::size_t>(n)).at(x);
}

std::optional<Elem> TruncatedSimplicialSet::find(int n, std::string_view name) const {
    const auto& level = names.at(static_cast<std::size_t>(n));
    for (Elem x = 0; x < level.size(); ++x)
        if (level[x] == name) return x;
    return std::nullopt;
}

Elem act(const TruncatedSimplicialSet& X, int n, Elem x, const MonotoneMap& f) {
    require_level(X, n);
    require_level(X, f.dom);
    if (f.cod != n) throw std::invalid_argument("act: map codomain does not match element level");
    if (x >= X.size(n)) throw std::out_of_range("act: element out of range");
    const CanonicalFactorization fact = factorize(f);
    Elem cur = x;
    int level = n;
    // faces first (largest index first), then degeneracies (smallest first);
    // this is the contravariant reading of the canonical factorization
    for (auto it = fact.face_indices.rbegin(); it != fact.face_indices.rend(); ++it) {
        cur = X.face(level, *it, cur);
        --level;
    }
    for (int j : fact.degeneracy_indices) {
        cur = X.degeneracy(level, j, cur);
        ++level;
    }
    return cur;
}

namespace {

void note(ValidationReport& report, bool ok, const std::string& what) {
    ++report.instances;
    if (!ok) report.violations.push_back(what);
}

}  // namespace

ValidationReport validate(const TruncatedSimplicialSet& X) {
    ValidationReport report;
    const int N = X.truncation;

    // table shapes
    if (static_cast<int>(X.names.size()) != N + 1) {
        report.violations.push_back("carrier count does not match truncation");
        return report;
    }
    for (int n = 1; n <= N; ++n) {
        const auto& f = X.faces.at(static_cast<std::size_t>(n));
        if (static_cast<int>(f.size()) != n + 1) {
            report.violations.push_back("face table arity wrong at level " + std::to_string(n));
            return report;
        }
        for (const auto& table : f) {
            if (table.size() != X.size(n)) {
                report.violations.push_back("face table not total at level " + std::to_string(n));
                return report;
            }
            for (Elem e : table)
                if (e >= X.size(n - 1)) {
                    report.violations.push_back("face table entry out of range at level " +
                                                std::to_string(n));
                    return report;
                }
        }
    }
    for (int n = 0; n < N; ++n) {
        const auto& d = X.degeneracies.at(static_cast<std::size_t>(n));
        if (static_cast<int>(d.size()) != n + 1) {
            report.violations.push_back("degeneracy table arity wrong at level " + std::to_string(n));
            return report;
        }
        for (const auto& table : d) {
            if (table.size() != X.size(n)) {
                report.violations.push_back("degeneracy table not total at level " + std::to_string(n));
                return report;
            }
            for (Elem e : table)
                if (e >= X.size(n + 1)) {
                    report.violations.push_back("degeneracy table entry out of range at level " +
                                                std::to_string(n));
                    return report;
                }
        }
    }

    // s_j o d_k family, contravariantly: applies to x in X_n with n+1 <= N
    for (int n = 0; n + 1 <= N; ++n) {
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= n + 1; ++k) {
                for (Elem x = 0; x < X.size(n); ++x) {
                    const Elem lhs = X.face(n + 1, k, X.degeneracy(n, j, x));
                    Elem rhs;
                    if (k == j || k == j + 1) {
                        rhs = x;
                    } else if (k > j + 1) {
                        rhs = X.degeneracy(n - 1, j, X.face(n, k - 1, x));
                    } else {
                        rhs = X.degeneracy(n - 1, j - 1, X.face(n, k, x));
                    }
                    note(report, lhs == rhs,
                         "identity s_" + std::to_string(j) + " o d_" + std::to_string(k) +
                             " fails on " + X.name(n, x) + " at level " + std::to_string(n));
                }
            }
        }
    }
    // d_j o d_k = d_{k+1} o d_j (k >= j), contravariantly on X_{n+2}
    for (int n = 0; n + 2 <= N; ++n) {
        for (int k = 0; k <= n + 1; ++k) {
            for (int j = 0; j <= k; ++j) {
                for (Elem x = 0; x < X.size(n + 2); ++x) {
                    const Elem lhs = X.face(n + 1, k, X.face(n + 2, j, x));
                    const Elem rhs = X.face(n + 1, j, X.face(n + 2, k + 1, x));
                    note(report, lhs == rhs,
                         "identity d_" + std::to_string(j) + " o d_" + std::to_string(k) +
                             " fails on " + X.name(n + 2, x) + " at level " + std::to_string(n + 2));
                }
            }
        }
    }
    // s_j o s_k = s_k o s_{j+1} (j >= k), contravariantly on X_n
    for (int n = 0; n + 2 <= N; ++n) {
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= j; ++k) {
                for (Elem x = 0; x < X.size(n); ++x) {
                    const Elem lhs = X.degeneracy(n + 1, k, X.degeneracy(n, j, x));
                    const Elem rhs = X.degeneracy(n + 1, j + 1, X.degeneracy(n, k, x));
                    note(report, lhs == rhs,
                         "identity s_" + std::to_string(j) + " o s_" + std::to_string(k) +
                             " fails on " + X.name(n, x) + " at level " + std::to_string(n));
                }
            }
        }
    }

    if (X.malcev) {
        const MalcevStructure& ms = *X.malcev;
        if (ms.mu.size() != X.names.size()) {
            report.violations.push_back("Malcev table count does not match truncation");
            return report;
        }
        for (int n = 0; n <= N; ++n) {
            const std::size_t s = X.size(n);
            if (ms.mu[static_cast<std::size_t>(n)].size() != s * s * s) {
                report.violations.push_back("Malcev table size wrong at level " + std::to_string(n));
                return report;
            }
        }
        // mu(x,x,y) = y and mu(x,y,y) = x
        for (int n = 0; n <= N; ++n) {
            for (Elem x = 0; x < X.size(n); ++x) {
                for (Elem y = 0; y < X.size(n); ++y) {
                    note(report, X.mu(n, x, x, y) == y,
                         "mu(x,x,y) != y at level " + std::to_string(n) + " for x=" + X.name(n, x) +
                             " y=" + X.name(n, y));
                    note(report, X.mu(n, x, y, y) == x,
                         "mu(x,y,y) != x at level " + std::to_string(n) + " for x=" + X.name(n, x) +
                             " y=" + X.name(n, y));
                }
            }
        }
        // naturality: mu commutes with every face and degeneracy table
        auto natural = [&](int n, auto&& op, int to, const std::string& what) {
            for (Elem x = 0; x < X.size(n); ++x)
                for (Elem y = 0; y < X.size(n); ++y)
                    for (Elem z = 0; z < X.size(n); ++z)
                        note(report, op(X.mu(n, x, y, z)) == X.mu(to, op(x), op(y), op(z)),
                             "mu not natural for " + what + " at level " + std::to_string(n));
        };
        for (int n = 1; n <= N; ++n)
            for (int i = 0; i <= n; ++i)
                natural(
                    n, [&](Elem e) { return X.face(n, i, e); }, n - 1, "d_" + std::to_string(i));
        for (int n = 0; n < N; ++n)
            for (int i = 0; i <= n; ++i)
                natural(
                    n, [&](Elem e) { return X.degeneracy(n, i, e); }, n + 1, "s_" + std::to_string(i));
    }
    return report;
}

Elem SimplicialMap::apply(int n, Elem x) const {
    return components.at(static_cast<std::size_t>(n)).at(x);
}

ValidationReport validate(const SimplicialMap& f) {
    ValidationReport report;
    const TruncatedSimplicialSet& X = *f.source;
    const TruncatedSimplicialSet& Y = *f.target;
    if (X.truncation != Y.truncation) {
        report.violations.push_back("source and target truncations differ");
        return report;
    }
    const int N = X.truncation;
    if (static_cast<int>(f.components.size()) != N + 1) {
        report.violations.push_back("component count does not match truncation");
        return report;
    }
    for (int n = 0; n <= N; ++n) {
        if (f.components[static_cast<std::size_t>(n)].size() != X.size(n)) {
            report.violations.push_back("component not total at level " + std::to_string(n));
            return report;
        }
        for (Elem x : f.components[static_cast<std::size_t>(n)])
            if (x >= Y.size(n)) {
                report.violations.push_back("component out of range at level " + std::to_string(n));
                return report;
            }
    }
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i <= n; ++i)
            for (Elem x = 0; x < X.size(n); ++x)
                note(report, f.apply(n - 1, X.face(n, i, x)) == Y.face(n, i, f.apply(n, x)),
                     "map does not commute with d_" + std::to_string(i) + " at level " +
                         std::to_string(n) + " on " + X.name(n, x));
    for (int n = 0; n < N; ++n)
        for (int i = 0; i <= n; ++i)
            for (Elem x = 0; x < X.size(n); ++x)
                note(report, f.apply(n + 1, X.degeneracy(n, i, x)) == Y.degeneracy(n, i, f.apply(n, x)),
                     "map does not commute with s_" + std::to_string(i) + " at level " +
                         std::to_string(n) + " on " + X.name(n, x));
    if (f.algebraic) {
        if (!X.malcev || !Y.malcev) {
            report.violations.push_back("algebraic map between sets without Malcev structure");
            return report;
        }
        for (int n = 0; n <= N; ++n)
            for (Elem x = 0; x < X.size(n); ++x)
                for (Elem y = 0; y < X.size(n); ++y)
                    for (Elem z = 0; z < X.size(n); ++z)
                        note(report,
                             f.apply(n, X.mu(n, x, y, z)) ==
                                 Y.mu(n, f.apply(n, x), f.apply(n, y), f.apply(n, z)),
                             "map does not commute with mu at level " + std::to_string(n));
    }
    return report;
}

Elem DegeneracySection::apply(int n, Elem y) const {
    return beta.at(static_cast<std::size_t>(n)).at(y);
}

ValidationReport validate_section(const SimplicialMap& alpha, const DegeneracySection& beta) {
    ValidationReport report;
    const TruncatedSimplicialSet& X = *alpha.source;
    const TruncatedSimplicialSet& Y = *alpha.target;
    const int N = X.truncation;
    if (static_cast<int>(beta.beta.size()) != N + 1) {
        report.violations.push_back("section level count does not match truncation");
        return report;
    }
    for (int n = 0; n <= N; ++n) {
        if (beta.beta[static_cast<std::size_t>(n)].size() != Y.size(n)) {
            report.violations.push_back("section not total at level " + std::to_string(n));
            return report;
        }
        for (Elem y = 0; y < Y.size(n); ++y)
            note(report, alpha.apply(n, beta.apply(n, y)) == y,
                 "alpha o beta != id at level " + std::to_string(n) + " on " + Y.name(n, y));
    }
    for (int n = 0; n < N; ++n)
        for (int k = 0; k <= n; ++k)
            for (Elem y = 0; y < Y.size(n); ++y)
                note(report,
                     beta.apply(n + 1, Y.degeneracy(n, k, y)) ==
                         X.degeneracy(n, k, beta.apply(n, y)),
                     "beta(y o s_" + std::to_string(k) + ") != beta(y) o s_" + std::to_string(k) +
                         " at level " + std::to_string(n) + " on " + Y.name(n, y));
    return report;
}

Elem FiniteMalcevAlgebra::apply(Elem x, Elem y, Elem z) const {
    return mu.at(mu_index(size(), x, y, z));
}

FiniteMalcevAlgebra FiniteMalcevAlgebra::cyclic(int k) {
    if (k < 1) throw std::invalid_argument("cyclic: order must be positive");
    FiniteMalcevAlgebra M;
    const std::size_t s = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < s; ++i) M.names.push_back(std::to_string(i));
    M.mu.resize(s * s * s);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y)
            for (std::size_t z = 0; z < s; ++z)
                M.mu[mu_index(s, x, y, z)] = (x + s - y + z) % s;
    return M;
}

FiniteMalcevAlgebra FiniteMalcevAlgebra::heyting2() {
    FiniteMalcevAlgebra M;
    M.names = {"0", "1"};
    auto imp = [](Elem a, Elem b) -> Elem { return (a == 1 && b == 0) ? 0 : 1; };
    auto conj = [](Elem a, Elem b) -> Elem { return (a == 1 && b == 1) ? 1 : 0; };
    M.mu.resize(8);
    for (Elem x = 0; x < 2; ++x)
        for (Elem y = 0; y < 2; ++y)
            for (Elem z = 0; z < 2; ++z)
                M.mu[mu_index(2, x, y, z)] = conj(imp(imp(z, y), x), imp(imp(x, y), z));
    return M;
}

FiniteMalcevAlgebra FiniteMalcevAlgebra::singleton() {
    FiniteMalcevAlgebra M;
    M.names = {"*"};
    M.mu = {0};
    return M;
}

std::optional<std::string> malcev_axiom_violation(const FiniteMalcevAlgebra& M) {
    const std::size_t s = M.size();
    if (M.mu.size() != s * s * s) return "table size mismatch";
    for (Elem v : M.mu)
        if (v >= s) return "table entry out of range";
    for (Elem x = 0; x < s; ++x)
        for (Elem y = 0; y < s; ++y) {
            if (M.apply(x, x, y) != y)
                return "mu(" + M.names[x] + "," + M.names[x] + "," + M.names[y] + ") != " + M.names[y];
            if (M.apply(x, y, y) != x)
                return "mu(" + M.names[x] + "," + M.names[y] + "," + M.names[y] + ") != " + M.names[x];
        }
    return std::nullopt;
}

Elem FiniteAbelianGroup::plus(Elem x, Elem y) const {
    return add.at(x * size() + y);
}

Elem FiniteAbelianGroup::neg(Elem x) const {
    for (Elem y = 0; y < size(); ++y)
        if (plus(x, y) == zero) return y;
    throw std::logic_error("no inverse found");
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(int k) {
    if (k < 1) throw std::invalid_argument("cyclic: order must be positive");
    FiniteAbelianGroup A;
    const std::size_t s = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < s; ++i) A.names.push_back(std::to_string(i));
    A.add.resize(s * s);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y) A.add[x * s + y] = (x + y) % s;
    A.zero = 0;
    return A;
}

std::optional<std::string> abelian_group_violation(const FiniteAbelianGroup& A) {
    const std::size_t s = A.size();
    if (s == 0) return "empty carrier";
    if (A.add.size() != s * s) return "table size mismatch";
    for (Elem v : A.add)
        if (v >= s) return "table entry out of range";
    for (Elem x = 0; x < s; ++x) {
        if (A.plus(A.zero, x) != x || A.plus(x, A.zero) != x) return "unit law fails";
        bool inv = false;
        for (Elem y = 0; y < s; ++y) inv = inv || A.plus(x, y) == A.zero;
        if (!inv) return "no inverse for " + A.names[x];
    }
    for (Elem x = 0; x < s; ++x)
        for (Elem y = 0; y < s; ++y) {
            if (A.plus(x, y) != A.plus(y, x)) return "not abelian: " + A.names[x] + "+" + A.names[y];
            for (Elem z = 0; z < s; ++z)
                if (A.plus(A.plus(x, y), z) != A.plus(x, A.plus(y, z))) return "not associative";
        }
    return std::nullopt;
}

TruncatedSimplicialSet constant_algebra(const FiniteMalcevAlgebra& M, int N) {
    if (N < 0) throw std::invalid_argument("constant_algebra: negative truncation");
    if (auto err = malcev_axiom_violation(M))
        throw std::invalid_argument("constant_algebra: " + *err);
    TruncatedSimplicialSet X;
    X.truncation = N;
    std::vector<Elem> id(M.size());
    for (Elem x = 0; x < M.size(); ++x) id[x] = x;
    X.names.assign(static_cast<std::size_t>(N) + 1, M.names);
    X.faces.resize(static_cast<std::size_t>(N) + 1);
    X.degeneracies.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 1; n <= N; ++n)
        X.faces[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, id);
    for (int n = 0; n < N; ++n)
        X.degeneracies[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, id);
    MalcevStructure ms;
    ms.mu.assign(static_cast<std::size_t>(N) + 1, M.mu);
    X.malcev = std::move(ms);
    return X;
}

namespace {

// tuple <-> index helpers for nerve levels: level n holds A^n, tuples ordered
// lexicographically with the first entry most significant
std::vector<Elem> nerve_tuple(std::size_t order, int n, Elem id) {
    std::vector<Elem> t(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = id % order;
        id /= order;
    }
    return t;
}

Elem nerve_index(std::size_t order, const std::vector<Elem>& t) {
    Elem id = 0;
    for (Elem g : t) id = id * order + g;
    return id;
}

std::string nerve_name(const FiniteAbelianGroup& A, const std::vector<Elem>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += A.names[t[i]];
    }
    return s + ")";
}

}  // namespace

TruncatedSimplicialSet nerve_abelian(const FiniteAbelianGroup& A, int N) {
    if (N < 0) throw std::invalid_argument("nerve_abelian: negative truncation");
    if (auto err = abelian_group_violation(A))
        throw std::invalid_argument("nerve_abelian: " + *err);
    const std::size_t order = A.size();
    TruncatedSimplicialSet X;
    X.truncation = N;
    X.names.resize(static_cast<std::size_t>(N) + 1);
    X.faces.resize(static_cast<std::size_t>(N) + 1);
    X.degeneracies.resize(static_cast<std::size_t>(N) + 1);
    std::vector<std::size_t> level_size(static_cast<std::size_t>(N) + 1, 1);
    for (int n = 1; n <= N; ++n)
        level_size[static_cast<std::size_t>(n)] = level_size[static_cast<std::size_t>(n) - 1] * order;
    for (int n = 0; n <= N; ++n)
        for (Elem x = 0; x < level_size[static_cast<std::size_t>(n)]; ++x)
            X.names[static_cast<std::size_t>(n)].push_back(nerve_name(A, nerve_tuple(order, n, x)));
    for (int n = 1; n <= N; ++n) {
        auto& tables = X.faces[static_cast<std::size_t>(n)];
        tables.resize(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            auto& table = tables[static_cast<std::size_t>(i)];
            table.resize(level_size[static_cast<std::size_t>(n)]);
            for (Elem x = 0; x < table.size(); ++x) {
                std::vector<Elem> t = nerve_tuple(order, n, x);
                std::vector<Elem> r;
                if (i == 0) {
                    r.assign(t.begin() + 1, t.end());
                } else if (i == n) {
                    r.assign(t.begin(), t.end() - 1);
                } else {
                    r = t;
                    r[static_cast<std::size_t>(i) - 1] =
                        A.plus(t[static_cast<std::size_t>(i) - 1], t[static_cast<std::size_t>(i)]);
                    r.erase(r.begin() + i);
                }
                table[x] = nerve_index(order, r);
            }
        }
    }
    for (int n = 0; n < N; ++n) {
        auto& tables = X.degeneracies[static_cast<std::size_t>(n)];
        tables.resize(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            auto& table = tables[static_cast<std::size_t>(i)];
            table.resize(level_size[static_cast<std::size_t>(n)]);
            for (Elem x = 0; x < table.size(); ++x) {
                std::vector<Elem> t = nerve_tuple(order, n, x);
                t.insert(t.begin() + i, A.zero);
                table[x] = nerve_index(order, t);
            }
        }
    }
    MalcevStructure ms;
    ms.mu.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        const std::size_t s = level_size[static_cast<std::size_t>(n)];
        auto& table = ms.mu[static_cast<std::size_t>(n)];
        table.resize(s * s * s);
        for (Elem x = 0; x < s; ++x) {
            const std::vector<Elem> tx = nerve_tuple(order, n, x);
            for (Elem y = 0; y < s; ++y) {
                const std::vector<Elem> ty = nerve_tuple(order, n, y);
                for (Elem z = 0; z < s; ++z) {
                    std::vector<Elem> tz = nerve_tuple(order, n, z);
                    std::vector<Elem> r(static_cast<std::size_t>(n));
                    for (std::size_t i = 0; i < r.size(); ++i)
                        r[i] = A.plus(A.plus(tx[i], A.neg(ty[i])), tz[i]);
                    table[mu_index(s, x, y, z)] = nerve_index(order, r);
                }
            }
        }
    }
    X.malcev = std::move(ms);
    return X;
}

SimplicialMap to_terminal(const TruncatedSimplicialSet& X, const TruncatedSimplicialSet& point) {
    for (int n = 0; n <= point.truncation; ++n)
        if (point.size(n) != 1) throw std::invalid_argument("to_terminal: target is not a point");
    SimplicialMap f;
    f.source = &X;
    f.target = &point;
    f.components.resize(static_cast<std::size_t>(X.truncation) + 1);
    for (int n = 0; n <= X.truncation; ++n)
        f.components[static_cast<std::size_t>(n)].assign(X.size(n), 0);
    f.algebraic = X.malcev.has_value() && point.malcev.has_value();
    return f;
}

DegeneracySection section_from_point(const TruncatedSimplicialSet& X, Elem x0) {
    if (x0 >= X.size(0)) throw std::invalid_argument("section_from_point: no such vertex");
    DegeneracySection beta;
    beta.beta.resize(static_cast<std::size_t>(X.truncation) + 1);
    Elem cur = x0;
    beta.beta[0] = {cur};
    for (int n = 0; n < X.truncation; ++n) {
        cur = X.degeneracy(n, 0, cur);
        beta.beta[static_cast<std::size_t>(n) + 1] = {cur};
    }
    return beta;
}

}  // namespace effkan
