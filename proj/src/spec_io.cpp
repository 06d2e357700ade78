#include "bithresh/spec_io.hpp"

#include "bithresh/errors.hpp"
#include "bithresh/graph.hpp"
#include "bithresh/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <vector>

namespace bithresh {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("missing \"") + key + "\" in " + where);
    return *it;
}

int need_int(const json& j, const char* key, const char* where) {
    const json& v = need(j, key, where);
    if (!v.is_number_integer())
        throw std::invalid_argument(std::string("\"") + key + "\" in " + where + " must be an integer");
    return v.get<int>();
}

Rat parse_rat_entry(const json& v, const char* where) {
    if (v.is_number_integer())
        return Rat(v.get<long long>());
    if (v.is_string()) {
        try {
            return rat_from_string(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string(where) + ": " + e.what());
        }
    }
    throw std::invalid_argument(std::string(where) +
                                " entries must be integers or rational strings like \"p/q\"");
}

std::vector<Rat> parse_rat_vector(const json& v, int n, const char* where) {
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw std::invalid_argument(std::string(where) + " must be an array of length " +
                                    std::to_string(n));
    std::vector<Rat> out;
    out.reserve(n);
    for (const auto& e : v) out.push_back(parse_rat_entry(e, where));
    return out;
}

std::pair<std::vector<int>, std::vector<int>> parse_thresholds(const json& jt, const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> kup(n), kdown(n);
    if (jt.contains("uniform")) {
        const json& u = jt["uniform"];
        int ku = need_int(u, "kup", "thresholds.uniform");
        int kd = need_int(u, "kdown", "thresholds.uniform");
        std::fill(kup.begin(), kup.end(), ku);
        std::fill(kdown.begin(), kdown.end(), kd);
    } else if (jt.contains("per_vertex")) {
        const json& pv = jt["per_vertex"];
        if (!pv.is_array() || static_cast<int>(pv.size()) != n)
            throw std::invalid_argument("thresholds.per_vertex must list every vertex exactly once");
        std::vector<bool> seen(n, false);
        for (const auto& e : pv) {
            int v = need_int(e, "v", "thresholds.per_vertex entry");
            if (v < 1 || v > n)
                throw std::invalid_argument("thresholds.per_vertex vertex label out of range: " +
                                            std::to_string(v));
            if (seen[v - 1])
                throw std::invalid_argument("thresholds.per_vertex lists vertex " +
                                            std::to_string(v) + " twice");
            seen[v - 1] = true;
            kup[v - 1] = need_int(e, "kup", "thresholds.per_vertex entry");
            kdown[v - 1] = need_int(e, "kdown", "thresholds.per_vertex entry");
        }
    } else if (jt.contains("rule")) {
        const json& r = jt["rule"];
        if (!r.is_string() || r.get<std::string>() != "kdown_deg_plus_1")
            throw std::invalid_argument("unknown thresholds.rule (expected \"kdown_deg_plus_1\")");
        int ku = need_int(jt, "kup", "thresholds");
        for (int v = 0; v < n; ++v) {
            kup[v] = ku;
            kdown[v] = g.degree(v) + 1;
        }
    } else {
        throw std::invalid_argument(
            "thresholds must contain \"uniform\", \"per_vertex\", or \"rule\"");
    }
    return {std::move(kup), std::move(kdown)};
}

UpdateScheme parse_update(const json& ju, int n) {
    const json& m = need(ju, "mode", "update");
    if (!m.is_string())
        throw std::invalid_argument("update.mode must be a string");
    const std::string mode = m.get<std::string>();
    if (mode == "sync") {
        if (ju.contains("pi"))
            throw std::invalid_argument("update.pi is not allowed with mode \"sync\"");
        return UpdateScheme::synchronous();
    }
    if (mode == "seq") {
        const json& jp = need(ju, "pi", "update");
        if (!jp.is_array() || static_cast<int>(jp.size()) != n)
            throw std::invalid_argument("update.pi must be a permutation of 1.." +
                                        std::to_string(n));
        std::vector<int> pi;
        pi.reserve(n);
        for (const auto& e : jp) {
            if (!e.is_number_integer())
                throw std::invalid_argument("update.pi entries must be integers");
            pi.push_back(e.get<int>() - 1);
        }
        validate_permutation(pi, n);
        return UpdateScheme::sequential(pi);
    }
    throw std::invalid_argument("update.mode must be \"sync\" or \"seq\"");
}

WeightedSystem parse_weighted(const json& jw, int n) {
    const json& ja = need(jw, "A", "weighted");
    if (!ja.is_array() || static_cast<int>(ja.size()) != n)
        throw std::invalid_argument("weighted.A must be an " + std::to_string(n) + "x" +
                                    std::to_string(n) + " matrix");
    std::vector<Rat> a;
    a.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : ja) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("weighted.A rows must have length " + std::to_string(n));
        for (const auto& e : row) a.push_back(parse_rat_entry(e, "weighted.A"));
    }
    std::vector<Rat> kup = parse_rat_vector(need(jw, "kup", "weighted"), n, "weighted.kup");
    std::vector<Rat> kdown = parse_rat_vector(need(jw, "kdown", "weighted"), n, "weighted.kdown");
    bool allow = false;
    if (jw.contains("allow_asymmetric")) {
        if (!jw["allow_asymmetric"].is_boolean())
            throw std::invalid_argument("weighted.allow_asymmetric must be a boolean");
        allow = jw["allow_asymmetric"].get<bool>();
    }
    return WeightedSystem(n, std::move(a), std::move(kup), std::move(kdown), allow);
}

} // namespace

SystemSpec parse_system_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("system spec must be a JSON object");

    Graph g = graph_from_json(need(j, "graph", "system spec").dump());
    const int n = g.vertex_count();

    const json& jt = need(j, "thresholds", "system spec");
    auto [kup, kdown] = parse_thresholds(jt, g);
    ThresholdForm form = jt.contains("uniform")  ? ThresholdForm::Uniform
                         : jt.contains("rule")   ? ThresholdForm::Rule
                                                 : ThresholdForm::PerVertex;

    UpdateScheme scheme = parse_update(need(j, "update", "system spec"), n);

    SystemSpec spec{System(std::move(g), std::move(kup), std::move(kdown), std::move(scheme)),
                    form, std::nullopt};
    if (j.contains("weighted"))
        spec.weighted = parse_weighted(j["weighted"], n);
    return spec;
}

SystemSpec load_system_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_spec(buf.str());
}

std::string system_spec_to_json(const SystemSpec& spec) {
    const System& sys = spec.system;
    const Graph& g = sys.graph();
    const int n = g.vertex_count();

    json j;
    j["graph"]["n"] = n;
    j["graph"]["edges"] = json::array();
    for (const auto& [u, v] : g.edges())
        j["graph"]["edges"].push_back({u + 1, v + 1});

    switch (spec.form) {
    case ThresholdForm::Uniform: {
        for (int v = 1; v < n; ++v)
            if (sys.kup(v) != sys.kup(0) || sys.kdown(v) != sys.kdown(0))
                throw std::invalid_argument("thresholds are not uniform");
        j["thresholds"]["uniform"] = {{"kup", sys.kup(0)}, {"kdown", sys.kdown(0)}};
        break;
    }
    case ThresholdForm::Rule: {
        for (int v = 0; v < n; ++v)
            if (sys.kdown(v) != g.degree(v) + 1 || sys.kup(v) != sys.kup(0))
                throw std::invalid_argument("thresholds do not follow the kdown_deg_plus_1 rule");
        j["thresholds"]["rule"] = "kdown_deg_plus_1";
        j["thresholds"]["kup"] = sys.kup(0);
        break;
    }
    case ThresholdForm::PerVertex: {
        j["thresholds"]["per_vertex"] = json::array();
        for (int v = 0; v < n; ++v)
            j["thresholds"]["per_vertex"].push_back(
                {{"v", v + 1}, {"kup", sys.kup(v)}, {"kdown", sys.kdown(v)}});
        break;
    }
    }

    if (sys.scheme().mode == UpdateMode::Synchronous) {
        j["update"]["mode"] = "sync";
    } else {
        j["update"]["mode"] = "seq";
        json jp = json::array();
        for (int v : sys.scheme().pi) jp.push_back(v + 1);
        j["update"]["pi"] = std::move(jp);
    }

    if (spec.weighted) {
        const WeightedSystem& ws = *spec.weighted;
        json ja = json::array();
        for (int i = 0; i < ws.size(); ++i) {
            json row = json::array();
            for (int k = 0; k < ws.size(); ++k) row.push_back(rat_to_string(ws.a(i, k)));
            ja.push_back(std::move(row));
        }
        j["weighted"]["A"] = std::move(ja);
        json jku = json::array(), jkd = json::array();
        for (int i = 0; i < ws.size(); ++i) {
            jku.push_back(rat_to_string(ws.kup(i)));
            jkd.push_back(rat_to_string(ws.kdown(i)));
        }
        j["weighted"]["kup"] = std::move(jku);
        j["weighted"]["kdown"] = std::move(jkd);
        if (!ws.symmetric())
            j["weighted"]["allow_asymmetric"] = true;
    }

    return j.dump(2) + "\n";
}

void save_system_spec(const SystemSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write spec file: " + path);
    out << system_spec_to_json(spec);
}

SystemSpec make_union_spec(const SystemSpec& a, const SystemSpec& b, int u1, int u2) {
    if (a.system.scheme().mode != UpdateMode::Sequential ||
        b.system.scheme().mode != UpdateMode::Sequential)
        throw std::invalid_argument("union requires sequential update on both systems");

    BridgeUnion bu = bridge_union(a.system.graph(), b.system.graph(), u1, u2);
    const int n1 = a.system.vertex_count();
    const int n2 = b.system.vertex_count();
    const int n = n1 + n2 + 1;

    std::vector<int> kup(n), kdown(n);
    for (int v = 0; v < n1; ++v) {
        kup[bu.map1[v]] = a.system.kup(v);
        kdown[bu.map1[v]] = a.system.kdown(v);
    }
    for (int v = 0; v < n2; ++v) {
        kup[bu.map2[v]] = b.system.kup(v);
        kdown[bu.map2[v]] = b.system.kdown(v);
    }
    kup[bu.bridge_vertex] = 3;
    kdown[bu.bridge_vertex] = 3;

    std::vector<int> pi;
    pi.reserve(n);
    for (int v : a.system.scheme().pi) pi.push_back(bu.map1[v]);
    for (int v : b.system.scheme().pi) pi.push_back(bu.map2[v]);
    pi.push_back(bu.bridge_vertex);

    return SystemSpec{System(std::move(bu.graph), std::move(kup), std::move(kdown),
                             UpdateScheme::sequential(std::move(pi))),
                      ThresholdForm::PerVertex, std::nullopt};
}

} // namespace bithresh
