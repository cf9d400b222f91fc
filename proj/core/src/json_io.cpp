#include "effkan/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace effkan {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::runtime_error("malformed document: " + what);
}

Elem resolve(const TruncatedSimplicialSet& X, int level, const std::string& name) {
    if (auto e = X.find(level, name)) return *e;
    bad("unknown element '" + name + "' at level " + std::to_string(level));
}

}  // namespace

json to_json(const Sieve& s) {
    std::vector<std::vector<int>> members;
    members.reserve(s.members.size());
    for (VertexSet m : s.members) members.push_back(vertex_list(m));
    std::sort(members.begin(), members.end());
    return json{{"ambient", s.ambient}, {"members", members}};
}

Sieve sieve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ambient") || !j.contains("members")) bad("sieve");
    Sieve s{j.at("ambient").get<int>(), {}};
    for (const auto& member : j.at("members")) {
        VertexSet mask = 0;
        for (const auto& v : member) {
            const int vertex = v.get<int>();
            if (vertex < 0 || vertex > s.ambient) bad("sieve member vertex out of range");
            mask |= VertexSet{1} << vertex;
        }
        if (mask == 0) bad("empty sieve member");
        s.members.insert(mask);
    }
    if (!downward_closed(s)) bad("sieve members not downward closed");
    return s;
}

json to_json(const MonotoneMap& f) {
    return json{{"dom", f.dom}, {"cod", f.cod}, {"values", f.values}};
}

MonotoneMap monotone_map_from_json(const json& j) {
    MonotoneMap f{j.at("dom").get<int>(), j.at("cod").get<int>(),
                  j.at("values").get<std::vector<int>>()};
    if (!is_valid(f)) bad("monotone map");
    return f;
}

json to_json(const TruncatedSimplicialSet& X) {
    json levels = json::array();
    for (int n = 0; n <= X.truncation; ++n) {
        json level;
        level["carrier"] = X.names[static_cast<std::size_t>(n)];
        json faces = json::array();
        if (n >= 1)
            for (const auto& table : X.faces[static_cast<std::size_t>(n)]) {
                json names = json::array();
                for (Elem e : table) names.push_back(X.name(n - 1, e));
                faces.push_back(names);
            }
        level["faces"] = faces;
        json degeneracies = json::array();
        if (n < X.truncation)
            for (const auto& table : X.degeneracies[static_cast<std::size_t>(n)]) {
                json names = json::array();
                for (Elem e : table) names.push_back(X.name(n + 1, e));
                degeneracies.push_back(names);
            }
        level["degeneracies"] = degeneracies;
        if (X.malcev) {
            const std::size_t size = X.size(n);
            json mu = json::array();
            for (Elem x = 0; x < size; ++x) {
                json plane = json::array();
                for (Elem y = 0; y < size; ++y) {
                    json row = json::array();
                    for (Elem z = 0; z < size; ++z) row.push_back(X.name(n, X.mu(n, x, y, z)));
                    plane.push_back(row);
                }
                mu.push_back(plane);
            }
            level["mu"] = mu;
        }
        levels.push_back(level);
    }
    return json{{"truncation", X.truncation}, {"levels", levels}};
}

TruncatedSimplicialSet complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("levels")) bad("complex");
    TruncatedSimplicialSet X;
    X.truncation = j.at("truncation").get<int>();
    const json& levels = j.at("levels");
    if (X.truncation < 0 || static_cast<int>(levels.size()) != X.truncation + 1)
        bad("level count does not match truncation");
    const std::size_t count = levels.size();
    X.names.resize(count);
    X.faces.resize(count);
    X.degeneracies.resize(count);
    for (std::size_t n = 0; n < count; ++n)
        X.names[n] = levels[n].at("carrier").get<std::vector<std::string>>();
    bool any_mu = false;
    for (std::size_t n = 0; n < count; ++n) {
        const json& level = levels[n];
        if (n >= 1) {
            const json& faces = level.at("faces");
            if (faces.size() != n + 1) bad("face table count at level " + std::to_string(n));
            for (const auto& table : faces) {
                std::vector<Elem> resolved;
                for (const auto& name : table)
                    resolved.push_back(resolve(X, static_cast<int>(n) - 1, name.get<std::string>()));
                if (resolved.size() != X.size(static_cast<int>(n))) bad("face table not total");
                X.faces[n].push_back(std::move(resolved));
            }
        }
        if (n + 1 < count) {
            const json& degeneracies = level.at("degeneracies");
            if (degeneracies.size() != n + 1)
                bad("degeneracy table count at level " + std::to_string(n));
            for (const auto& table : degeneracies) {
                std::vector<Elem> resolved;
                for (const auto& name : table)
                    resolved.push_back(resolve(X, static_cast<int>(n) + 1, name.get<std::string>()));
                if (resolved.size() != X.size(static_cast<int>(n))) bad("degeneracy table not total");
                X.degeneracies[n].push_back(std::move(resolved));
            }
        }
        if (level.contains("mu")) any_mu = true;
    }
    if (any_mu) {
        MalcevStructure ms;
        ms.mu.resize(count);
        for (std::size_t n = 0; n < count; ++n) {
            if (!levels[n].contains("mu")) bad("mu present on some levels but not all");
            const json& mu = levels[n].at("mu");
            const std::size_t size = X.size(static_cast<int>(n));
            if (mu.size() != size) bad("mu table shape");
            auto& table = ms.mu[n];
            table.resize(size * size * size);
            for (std::size_t x = 0; x < size; ++x) {
                if (mu[x].size() != size) bad("mu table shape");
                for (std::size_t y = 0; y < size; ++y) {
                    if (mu[x][y].size() != size) bad("mu table shape");
                    for (std::size_t z = 0; z < size; ++z)
                        table[(x * size + y) * size + z] =
                            resolve(X, static_cast<int>(n), mu[x][y][z].get<std::string>());
                }
            }
        }
        X.malcev = std::move(ms);
    }
    return X;
}

json to_json(const CheckReport& report) {
    return json{{"checker", report.checker},
                {"instances", report.instances},
                {"independent_count", report.independent_count},
                {"failures", report.failures}};
}

json to_json(const ValidationReport& report, const std::string& checker) {
    std::vector<std::string> failures = report.violations;
    std::sort(failures.begin(), failures.end());
    return json{{"checker", checker},
                {"instances", report.instances},
                {"independent_count", report.instances},
                {"failures", failures}};
}

namespace {

json step_to_json(const SequenceStep& step) {
    json out;
    out["horn"] = {step.gen.spec.n, step.gen.spec.m};
    out["sign"] = step.gen.sign ? json(std::string(1, *step.gen.sign)) : json(nullptr);
    out["embedding"] = step.embedding.values;
    return out;
}

SequenceStep step_from_json(const json& j, int ambient) {
    const auto horn = j.at("horn").get<std::vector<int>>();
    if (horn.size() != 2) bad("step horn");
    Generator gen{HornSpec{horn[0], horn[1]}, std::nullopt};
    if (j.contains("sign") && !j.at("sign").is_null()) {
        const std::string sign = j.at("sign").get<std::string>();
        if (sign != "+" && sign != "-") bad("step sign");
        gen.sign = sign[0];
    }
    MonotoneMap embedding{horn[0], ambient, j.at("embedding").get<std::vector<int>>()};
    if (!is_valid(embedding) || !is_mono(embedding)) bad("step embedding");
    return SequenceStep{gen, embedding};
}

}  // namespace

json to_json(const HornPushoutSequence& seq) {
    json steps = json::array();
    for (const SequenceStep& step : seq.steps) steps.push_back(step_to_json(step));
    return json{{"ambient", seq.ambient},
                {"start", to_json(seq.start())},
                {"steps", steps},
                {"end", to_json(seq.end())}};
}

HornPushoutSequence sequence_from_json(const json& j) {
    const int ambient = j.at("ambient").get<int>();
    Sieve start = sieve_from_json(j.at("start"));
    if (start.ambient != ambient) bad("sequence start ambient");
    std::vector<SequenceStep> steps;
    for (const auto& step : j.at("steps")) steps.push_back(step_from_json(step, ambient));
    if (auto err = sequence_error(start, steps)) bad("sequence: " + *err);
    return make_sequence(start, std::move(steps));
}

json to_json(const SequenceSquare& sq) {
    return json{{"f", to_json(sq.f)},
                {"mu", sq.reindex},
                {"source", to_json(sq.source)},
                {"target", to_json(sq.target)}};
}

SequenceSquare square_from_json(const json& j) {
    SequenceSquare sq{monotone_map_from_json(j.at("f")), j.at("mu").get<std::vector<int>>(),
                      sequence_from_json(j.at("source")), sequence_from_json(j.at("target"))};
    if (auto err = square_error(sq)) bad("square: " + *err);
    return sq;
}

json problem_to_json(const SimplicialMap& alpha, const LiftingProblem& p) {
    const int n = p.horn.spec.n;
    json facets = json::array();
    for (int k = 0; k <= n; ++k) {
        if (k == p.horn.spec.m) continue;
        facets.push_back(alpha.source->name(n - 1, p.horn.facets[static_cast<std::size_t>(k)]));
    }
    return json{{"horn", {n, p.horn.spec.m}},
                {"facets", facets},
                {"base", alpha.target->name(n, p.base)}};
}

LiftingProblem problem_from_json(const SimplicialMap& alpha, const json& j) {
    const auto horn = j.at("horn").get<std::vector<int>>();
    if (horn.size() != 2 || !horn_spec_valid(HornSpec{horn[0], horn[1]})) bad("problem horn");
    const int n = horn[0];
    const int m = horn[1];
    LiftingProblem p{HornMap{HornSpec{n, m}, std::vector<Elem>(static_cast<std::size_t>(n) + 1, kNoElem)},
                     0};
    const json& facets = j.at("facets");
    if (static_cast<int>(facets.size()) != n) bad("problem facet count");
    std::size_t idx = 0;
    for (int k = 0; k <= n; ++k) {
        if (k == m) continue;
        p.horn.facets[static_cast<std::size_t>(k)] =
            resolve(*alpha.source, n - 1, facets[idx++].get<std::string>());
    }
    if (j.contains("base")) {
        p.base = resolve(*alpha.target, n, j.at("base").get<std::string>());
    } else if (alpha.target->size(n) == 1) {
        p.base = 0;
    } else {
        bad("problem base required when the target is not a point");
    }
    return p;
}

LoadedInstance instance_from_json(const json& j) {
    LoadedInstance out;
    if (j.is_object() && j.contains("source") && j.contains("target") && j.contains("map")) {
        out.source = std::make_unique<TruncatedSimplicialSet>(complex_from_json(j.at("source")));
        out.target = std::make_unique<TruncatedSimplicialSet>(complex_from_json(j.at("target")));
        out.map.source = out.source.get();
        out.map.target = out.target.get();
        out.map.algebraic = j.value("algebraic", out.source->malcev && out.target->malcev);
        const json& tables = j.at("map");
        if (static_cast<int>(tables.size()) != out.source->truncation + 1) bad("map level count");
        for (int n = 0; n <= out.source->truncation; ++n) {
            const json& table = tables[static_cast<std::size_t>(n)];
            std::vector<Elem> component(out.source->size(n));
            if (table.size() != component.size()) bad("map table not total");
            for (const auto& [from, to] : table.items()) {
                const Elem x = resolve(*out.source, n, from);
                component[x] = resolve(*out.target, n, to.get<std::string>());
            }
            out.map.components.push_back(std::move(component));
        }
        if (j.contains("section")) {
            DegeneracySection beta;
            const json& tables_b = j.at("section");
            if (static_cast<int>(tables_b.size()) != out.source->truncation + 1)
                bad("section level count");
            for (int n = 0; n <= out.source->truncation; ++n) {
                const json& table = tables_b[static_cast<std::size_t>(n)];
                std::vector<Elem> component(out.target->size(n));
                if (table.size() != component.size()) bad("section table not total");
                for (const auto& [from, to] : table.items()) {
                    const Elem y = resolve(*out.target, n, from);
                    component[y] = resolve(*out.source, n, to.get<std::string>());
                }
                beta.beta.push_back(std::move(component));
            }
            out.section = std::move(beta);
        }
        return out;
    }
    // bare complex: read it over the terminal object
    out.source = std::make_unique<TruncatedSimplicialSet>(complex_from_json(j));
    out.target = std::make_unique<TruncatedSimplicialSet>(
        constant_algebra(FiniteMalcevAlgebra::singleton(), out.source->truncation));
    out.map = to_terminal(*out.source, *out.target);
    if (out.source->size(0) > 0) out.section = section_from_point(*out.source, 0);
    return out;
}

}  // namespace effkan
