#include "effkan/sieve.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace effkan {

namespace {

void require_ambient(int ambient) {
    if (ambient < 0 || ambient > kMaxAmbient)
        throw std::invalid_argument("sieve ambient out of range (0..62)");
}

VertexSet all_vertices(int ambient) {
    return (VertexSet{1} << (ambient + 1)) - 1;
}

}  // namespace

VertexSet map_image(const MonotoneMap& f) {
    VertexSet s = 0;
    for (int v : f.values) s |= VertexSet{1} << v;
    return s;
}

int vertex_count(VertexSet s) {
    return std::popcount(s);
}

std::vector<int> vertex_list(VertexSet s) {
    std::vector<int> out;
    for (int v = 0; s != 0; ++v, s >>= 1)
        if (s & 1) out.push_back(v);
    return out;
}

MonotoneMap mono_from_vertices(VertexSet verts, int ambient) {
    if (verts == 0) throw std::invalid_argument("mono_from_vertices: empty vertex set");
    const std::vector<int> vs = vertex_list(verts);
    if (vs.back() > ambient) throw std::invalid_argument("mono_from_vertices: vertex beyond ambient");
    return MonotoneMap{static_cast<int>(vs.size()) - 1, ambient, vs};
}

bool horn_spec_valid(const HornSpec& spec) {
    return spec.n >= 1 && spec.m >= 0 && spec.m <= spec.n;
}

bool downward_closed(const Sieve& s) {
    for (VertexSet m : s.members) {
        if (m == 0 || (m & ~all_vertices(s.ambient)) != 0) return false;
        for (VertexSet v = m; v != 0; v &= v - 1) {
            const VertexSet sub = m & ~(v & (~v + 1));
            if (sub != 0 && !s.members.count(sub)) return false;
        }
    }
    return true;
}

Sieve empty_sieve(int ambient) {
    require_ambient(ambient);
    return Sieve{ambient, {}};
}

Sieve full_sieve(int ambient) {
    require_ambient(ambient);
    return simplex_sieve(ambient, all_vertices(ambient));
}

Sieve simplex_sieve(int ambient, VertexSet verts) {
    require_ambient(ambient);
    if ((verts & ~all_vertices(ambient)) != 0)
        throw std::invalid_argument("simplex_sieve: vertex beyond ambient");
    Sieve s{ambient, {}};
    // enumerate the nonempty subsets of verts
    for (VertexSet sub = verts; sub != 0; sub = (sub - 1) & verts) s.members.insert(sub);
    return s;
}

Sieve face_sieve(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw std::invalid_argument("face_sieve: index out of range");
    return simplex_sieve(n, all_vertices(n) & ~(VertexSet{1} << k));
}

Sieve horn_sieve(const HornSpec& spec) {
    if (!horn_spec_valid(spec)) throw std::invalid_argument("horn_sieve: invalid horn spec");
    Sieve s = empty_sieve(spec.n);
    for (int k = 0; k <= spec.n; ++k) {
        if (k == spec.m) continue;
        const Sieve face = face_sieve(spec.n, k);
        s.members.insert(face.members.begin(), face.members.end());
    }
    return s;
}

Sieve sieve_union(const Sieve& s, const Sieve& t) {
    if (s.ambient != t.ambient) throw std::invalid_argument("sieve_union: ambient mismatch");
    Sieve out = s;
    out.members.insert(t.members.begin(), t.members.end());
    return out;
}

Sieve sieve_intersect(const Sieve& s, const Sieve& t) {
    if (s.ambient != t.ambient) throw std::invalid_argument("sieve_intersect: ambient mismatch");
    Sieve out = empty_sieve(s.ambient);
    for (VertexSet m : s.members)
        if (t.members.count(m)) out.members.insert(m);
    return out;
}

bool factors_through(const MonotoneMap& p, const Sieve& s) {
    if (p.cod != s.ambient) throw std::invalid_argument("factors_through: ambient mismatch");
    return s.members.count(map_image(p)) != 0;
}

Sieve pullback_sieve(const MonotoneMap& f, const Sieve& t) {
    if (f.cod != t.ambient) throw std::invalid_argument("pullback_sieve: ambient mismatch");
    require_ambient(f.dom);
    Sieve out = empty_sieve(f.dom);
    const VertexSet all = all_vertices(f.dom);
    for (VertexSet sub = all; sub != 0; sub = (sub - 1) & all) {
        VertexSet image = 0;
        for (VertexSet v = sub; v != 0; v &= v - 1)
            image |= VertexSet{1} << f.values[static_cast<std::size_t>(std::countr_zero(v))];
        if (t.members.count(image)) out.members.insert(sub);
    }
    return out;
}

std::size_t nondegenerate_count(const Sieve& s) {
    return s.members.size();
}

std::optional<std::string> attach_horn_error(const Sieve& s, const HornSpec& spec,
                                             const MonotoneMap& e) {
    if (!horn_spec_valid(spec)) return "invalid horn spec";
    if (!is_valid(e) || !is_mono(e)) return "embedding is not a mono";
    if (e.dom != spec.n || e.cod != s.ambient) return "embedding shape mismatch";
    if (pullback_sieve(e, s) != horn_sieve(spec)) return "pullback of sieve along embedding is not the horn";
    return std::nullopt;
}

Sieve attach_horn(const Sieve& s, const HornSpec& spec, const MonotoneMap& e) {
    if (auto err = attach_horn_error(s, spec, e)) throw std::invalid_argument("attach_horn: " + *err);
    return sieve_union(s, simplex_sieve(s.ambient, map_image(e)));
}

std::vector<Sieve> enumerate_sieves(int ambient) {
    require_ambient(ambient);
    // masks sorted by popcount then value, so every proper subset of a mask
    // precedes it
    std::vector<VertexSet> masks;
    const VertexSet all = all_vertices(ambient);
    for (VertexSet m = 1; m <= all; ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](VertexSet a, VertexSet b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    std::vector<Sieve> out;
    std::set<VertexSet> current;
    // DFS: include a mask only when all its one-smaller subsets are included
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == masks.size()) {
            out.push_back(Sieve{ambient, current});
            return;
        }
        self(self, idx + 1);  // exclude masks[idx]
        const VertexSet m = masks[idx];
        bool ok = true;
        if (std::popcount(m) > 1) {
            for (VertexSet v = m; v != 0 && ok; v &= v - 1)
                if (!current.count(m & ~(v & (~v + 1)))) ok = false;
        }
        if (ok) {
            current.insert(m);
            self(self, idx + 1);  // include masks[idx]
            current.erase(m);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const Sieve& a, const Sieve& b) {
        return a.members < b.members;
    });
    return out;
}

std::string to_string(const Sieve& s) {
    std::string out = "sieve(" + std::to_string(s.ambient) + "){";
    bool first_member = true;
    for (VertexSet m : s.members) {
        if (!first_member) out += ",";
        first_member = false;
        out += "{";
        bool first = true;
        for (int v : vertex_list(m)) {
            if (!first) out += " ";
            first = false;
            out += std::to_string(v);
        }
        out += "}";
    }
    return out + "}";
}

}  // namespace effkan
