#include "effkan/delta.hpp"

#include <algorithm>
#include <stdexcept>

namespace effkan {

bool is_valid(const MonotoneMap& f) {
    if (f.dom < 0 || f.cod < 0) return false;
    if (f.values.size() != static_cast<std::size_t>(f.dom) + 1) return false;
    int prev = 0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const int v = f.values[k];
        if (v < 0 || v > f.cod) return false;
        if (k > 0 && v < prev) return false;
        prev = v;
    }
    return true;
}

bool is_mono(const MonotoneMap& f) {
    for (std::size_t k = 1; k < f.values.size(); ++k)
        if (f.values[k] == f.values[k - 1]) return false;
    return true;
}

bool is_epi(const MonotoneMap& f) {
    int next = 0;
    for (int v : f.values) {
        if (v == next) ++next;
        else if (v > next) return false;
    }
    return next == f.cod + 1;
}

MonotoneMap identity_map(int n) {
    if (n < 0) throw std::invalid_argument("identity_map: negative level");
    MonotoneMap f{n, n, {}};
    f.values.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) f.values[static_cast<std::size_t>(k)] = k;
    return f;
}

MonotoneMap face_map(int n, int i) {
    if (n < 0 || i < 0 || i > n + 1) throw std::invalid_argument("face_map: index out of range");
    MonotoneMap f{n, n + 1, {}};
    f.values.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) f.values[static_cast<std::size_t>(k)] = k < i ? k : k + 1;
    return f;
}

MonotoneMap degeneracy_map(int n, int i) {
    if (n < 0 || i < 0 || i > n) throw std::invalid_argument("degeneracy_map: index out of range");
    MonotoneMap f{n + 1, n, {}};
    f.values.resize(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k) f.values[static_cast<std::size_t>(k)] = k <= i ? k : k - 1;
    return f;
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (f.cod != g.dom) throw std::invalid_argument("compose: domain mismatch");
    MonotoneMap h{f.dom, g.cod, {}};
    h.values.reserve(f.values.size());
    for (int v : f.values) h.values.push_back(g.values[static_cast<std::size_t>(v)]);
    return h;
}

CanonicalFactorization factorize(const MonotoneMap& f) {
    CanonicalFactorization fact{f.dom, f.cod, {}, {}};
    std::vector<bool> hit(static_cast<std::size_t>(f.cod) + 1, false);
    for (int v : f.values) hit[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v <= f.cod; ++v)
        if (!hit[static_cast<std::size_t>(v)]) fact.face_indices.push_back(v);
    for (int j = 0; j < f.dom; ++j)
        if (f.values[static_cast<std::size_t>(j)] == f.values[static_cast<std::size_t>(j) + 1])
            fact.degeneracy_indices.push_back(j);
    return fact;
}

MonotoneMap recompose(const CanonicalFactorization& fact) {
    const int mid = fact.dom - static_cast<int>(fact.degeneracy_indices.size());
    if (mid < 0) throw std::invalid_argument("recompose: inconsistent factorization");
    MonotoneMap f = identity_map(mid);
    // degeneracies: s_{j_1} o ... o s_{j_q}, built outside-in
    for (int j : fact.degeneracy_indices) f = compose(f, degeneracy_map(f.dom, j));
    // faces: d_{i_p} o ... o d_{i_1}, built inside-out
    for (int i : fact.face_indices) f = compose(face_map(f.cod, i), f);
    return f;
}

std::vector<MonotoneMap> enumerate_monotone_maps(int a, int b) {
    std::vector<MonotoneMap> out;
    if (a < 0 || b < 0) return out;
    std::vector<int> vals(static_cast<std::size_t>(a) + 1, 0);
    while (true) {
        out.push_back(MonotoneMap{a, b, vals});
        int pos = a;
        while (pos >= 0 && vals[static_cast<std::size_t>(pos)] == b) --pos;
        if (pos < 0) break;
        const int v = vals[static_cast<std::size_t>(pos)] + 1;
        for (int k = pos; k <= a; ++k) vals[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

std::string to_string(const MonotoneMap& f) {
    std::string s = "[" + std::to_string(f.dom) + "]->[" + std::to_string(f.cod) + "](";
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(f.values[k]);
    }
    return s + ")";
}

namespace {

void check_equal(IdentityCheckReport& report, const MonotoneMap& lhs, const MonotoneMap& rhs,
                 const std::string& what) {
    ++report.instances;
    if (lhs != rhs)
        report.violations.push_back(what + ": " + to_string(lhs) + " != " + to_string(rhs));
}

}  // namespace

IdentityCheckReport check_simplicial_identities(int maxN) {
    IdentityCheckReport report;
    for (int n = 0; n <= maxN; ++n) {
        // s_j o d_k on [n] -> [n+1] -> [n]
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= n + 1; ++k) {
                const MonotoneMap lhs = compose(degeneracy_map(n, j), face_map(n, k));
                MonotoneMap rhs;
                if (k == j || k == j + 1) {
                    rhs = identity_map(n);
                } else if (k > j + 1) {
                    rhs = compose(face_map(n - 1, k - 1), degeneracy_map(n - 1, j));
                } else {  // k < j
                    rhs = compose(face_map(n - 1, k), degeneracy_map(n - 1, j - 1));
                }
                check_equal(report, lhs, rhs,
                            "s_" + std::to_string(j) + " o d_" + std::to_string(k) + " at n=" +
                                std::to_string(n));
            }
        }
        // d_j o d_k = d_{k+1} o d_j for k >= j, on [n] -> [n+1] -> [n+2]
        for (int k = 0; k <= n + 1; ++k) {
            for (int j = 0; j <= k; ++j) {
                const MonotoneMap lhs = compose(face_map(n + 1, j), face_map(n, k));
                const MonotoneMap rhs = compose(face_map(n + 1, k + 1), face_map(n, j));
                check_equal(report, lhs, rhs,
                            "d_" + std::to_string(j) + " o d_" + std::to_string(k) + " at n=" +
                                std::to_string(n));
            }
        }
        // s_j o s_k = s_k o s_{j+1} for j >= k, on [n+2] -> [n+1] -> [n]
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k <= j; ++k) {
                const MonotoneMap lhs = compose(degeneracy_map(n, j), degeneracy_map(n + 1, k));
                const MonotoneMap rhs = compose(degeneracy_map(n, k), degeneracy_map(n + 1, j + 1));
                check_equal(report, lhs, rhs,
                            "s_" + std::to_string(j) + " o s_" + std::to_string(k) + " at n=" +
                                std::to_string(n));
            }
        }
    }
    return report;
}

}  // namespace effkan
