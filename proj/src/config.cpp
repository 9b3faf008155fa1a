#include "fnn/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fnn {

using nlohmann::json;

namespace {

const char* const kDefaultConfig = R"json({
  "scenario": {
    "alpha1": "0.25pi",
    "alpha2": "0.25pi",
    "v1": 0.9710,
    "v2": 0.9860,
    "vh": 0.943,
    "alice_settings": [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
    "charlie_settings": [[0.7071067811865476, 0.0, 0.7071067811865476],
                         [-0.7071067811865476, 0.0, 0.7071067811865476]]
  },
  "statistics": {
    "total": 4700,
    "seed": 1,
    "bootstrap_resamples": 1000
  },
  "optimization": {
    "n_lambda": 4,
    "restarts": 32,
    "iters": 50
  },
  "spacetime": {
    "fiber_speed": 0.2,
    "light_speed": 0.299792,
    "sigma_margin": 0.0,
    "nodes": ["Alice", "S1", "Bob", "S2", "Charlie"],
    "distances": [
      {"a": "Alice", "b": "S1", "d": 110.0, "sigma": 1.0},
      {"a": "S1", "b": "Bob", "d": 89.0, "sigma": 1.0},
      {"a": "Bob", "b": "S2", "d": 106.0, "sigma": 1.0},
      {"a": "S2", "b": "Charlie", "d": 104.0, "sigma": 1.0},
      {"a": "Alice", "b": "Bob", "d": 199.0, "sigma": 1.0},
      {"a": "Bob", "b": "Charlie", "d": 192.0, "sigma": 1.0},
      {"a": "Alice", "b": "Charlie", "d": 384.0, "sigma": 1.0},
      {"a": "Alice", "b": "S2", "d": 306.0, "sigma": 1.0},
      {"a": "S1", "b": "S2", "d": 195.0, "sigma": 1.0},
      {"a": "S1", "b": "Charlie", "d": 277.0, "sigma": 1.0}
    ],
    "fibers": [
      {"name": "l_A1", "a": "Alice", "b": "S1", "l": 125.48, "sigma": 0.1},
      {"name": "l_B1", "a": "S1", "b": "Bob", "l": 108.75, "sigma": 0.1},
      {"name": "l_B2", "a": "Bob", "b": "S2", "l": 123.86, "sigma": 0.1},
      {"name": "l_C2", "a": "S2", "b": "Charlie", "l": 112.63, "sigma": 0.1}
    ],
    "delays": [
      {"name": "dT_S1", "value": 154.4, "sigma": 0.5},
      {"name": "dT_S2", "value": 160.0, "sigma": 0.5},
      {"name": "dT_QRNG_A", "value": 53.0, "sigma": 2.0},
      {"name": "dT_QRNG_C", "value": 53.0, "sigma": 2.0},
      {"name": "dT_QM_A", "value": 446.8, "sigma": 0.5},
      {"name": "dT_QM_C", "value": 408.6, "sigma": 0.5},
      {"name": "dT_M_A", "value": 38.4, "sigma": 0.5},
      {"name": "dT_M_B", "value": 44.9, "sigma": 0.5},
      {"name": "dT_M_C", "value": 44.6, "sigma": 0.5}
    ],
    "events": [
      {"name": "S1", "position": "S1",
       "start": ["+dT_S2", "+l_B2", "-l_B1", "-dT_S1"],
       "end": ["+dT_S2", "+l_B2", "-l_B1"]},
      {"name": "S2", "position": "S2",
       "start": [],
       "end": ["+dT_S2"]},
      {"name": "QRNG_A", "position": "Alice",
       "start": ["+dT_S2", "+l_B2", "-l_B1", "+l_A1", "-dT_QM_A", "-dT_QRNG_A"],
       "end": ["+dT_S2", "+l_B2", "-l_B1", "+l_A1", "-dT_QM_A"]},
      {"name": "QRNG_C", "position": "Charlie",
       "start": ["+dT_S2", "+l_C2", "-dT_QM_C", "-dT_QRNG_C"],
       "end": ["+dT_S2", "+l_C2", "-dT_QM_C"]},
      {"name": "M_A", "position": "Alice",
       "start": ["+dT_S2", "+l_B2", "-l_B1", "+l_A1"],
       "end": ["+dT_S2", "+l_B2", "-l_B1", "+l_A1", "+dT_M_A"]},
      {"name": "M_B", "position": "Bob",
       "start": ["+dT_S2", "+l_B2"],
       "end": ["+dT_S2", "+l_B2", "+dT_M_B"]},
      {"name": "M_C", "position": "Charlie",
       "start": ["+dT_S2", "+l_C2"],
       "end": ["+dT_S2", "+l_C2", "+dT_M_C"]}
    ],
    "pairs": [
      ["S1", "S2"],
      ["QRNG_A", "S1"],
      ["QRNG_A", "S2"],
      ["QRNG_A", "M_B"],
      ["QRNG_A", "M_C"],
      ["QRNG_A", "QRNG_C"],
      ["M_A", "S2"],
      ["QRNG_C", "S1"],
      ["QRNG_C", "S2"],
      ["QRNG_C", "M_A"],
      ["QRNG_C", "M_B"],
      ["M_C", "S1"]
    ]
  }
})json";

// Deep merge of `user` over `base`; any key absent from the defaults at the
// same depth is rejected, so typos surface instead of silently vanishing.
void merge_over_defaults(json& base, const json& user, const std::string& path) {
    if (!user.is_object())
        throw ConfigError("expected an object at " + (path.empty() ? "top level" : path));
    for (const auto& [key, value] : user.items()) {
        const std::string here = path.empty() ? key : path + "." + key;
        if (!base.contains(key)) throw ConfigError("unknown key: " + here);
        if (base[key].is_object() && value.is_object()) {
            merge_over_defaults(base[key], value, here);
        } else {
            base[key] = value;
        }
    }
}

double get_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field + ": expected a number");
    return j.get<double>();
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("unknown key: " + path + "." + key);
    }
}

ObservableSpec bloch_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(field + ": expected a bloch vector [nx, ny, nz]");
    ObservableSpec o{get_number(j[0], field), get_number(j[1], field),
                     get_number(j[2], field)};
    try {
        validate(o);
    } catch (const std::exception& e) {
        throw ConfigError(field + ": " + e.what());
    }
    return o;
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig s;
    s.alpha1 = parse_angle(j.at("alpha1"), "scenario.alpha1");
    s.alpha2 = parse_angle(j.at("alpha2"), "scenario.alpha2");
    s.v1 = get_number(j.at("v1"), "scenario.v1");
    s.v2 = get_number(j.at("v2"), "scenario.v2");
    s.vh = get_number(j.at("vh"), "scenario.vh");

    auto check_visibility = [](double v, const std::string& field) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ConfigError(field + ": visibility out of range [0, 1]");
    };
    check_visibility(s.v1, "scenario.v1");
    check_visibility(s.v2, "scenario.v2");
    check_visibility(s.vh, "scenario.vh");
    auto check_angle = [](double a, const std::string& field) {
        if (!(a >= 0.0 && a <= std::numbers::pi / 2 + 1e-12))
            throw ConfigError(field + ": angle out of range [0, pi/2]");
    };
    check_angle(s.alpha1, "scenario.alpha1");
    check_angle(s.alpha2, "scenario.alpha2");

    const json& alice = j.at("alice_settings");
    const json& charlie = j.at("charlie_settings");
    if (!alice.is_array() || alice.size() != 2)
        throw ConfigError("scenario.alice_settings: expected two bloch vectors");
    if (!charlie.is_array() || charlie.size() != 2)
        throw ConfigError("scenario.charlie_settings: expected two bloch vectors");
    for (int i = 0; i < 2; ++i) {
        s.alice_settings[i] = bloch_from_json(alice[i], "scenario.alice_settings");
        s.charlie_settings[i] = bloch_from_json(charlie[i], "scenario.charlie_settings");
    }
    return s;
}

StatisticsConfig statistics_from_json(const json& j) {
    StatisticsConfig s;
    if (!j.at("total").is_number_unsigned() && !j.at("total").is_number_integer())
        throw ConfigError("statistics.total: expected a nonnegative integer");
    const auto total = j.at("total").get<long long>();
    if (total < 1) throw ConfigError("statistics.total: must be >= 1");
    s.total = static_cast<std::uint64_t>(total);
    s.seed = j.at("seed").get<std::uint64_t>();
    s.bootstrap_resamples = j.at("bootstrap_resamples").get<int>();
    if (s.bootstrap_resamples < 100)
        throw ConfigError("statistics.bootstrap_resamples: must be >= 100");
    return s;
}

OptimizationConfig optimization_from_json(const json& j) {
    OptimizationConfig o;
    o.n_lambda = j.at("n_lambda").get<int>();
    o.restarts = j.at("restarts").get<int>();
    o.iters = j.at("iters").get<int>();
    if (o.n_lambda < 1) throw ConfigError("optimization.n_lambda: must be >= 1");
    if (o.restarts < 1) throw ConfigError("optimization.restarts: must be >= 1");
    if (o.iters < 1) throw ConfigError("optimization.iters: must be >= 1");
    return o;
}

SpacetimeConfig spacetime_from_json(const json& j) {
    SpacetimeConfig s;
    s.fiber_speed = get_number(j.at("fiber_speed"), "spacetime.fiber_speed");
    s.light_speed = get_number(j.at("light_speed"), "spacetime.light_speed");
    s.sigma_margin = get_number(j.at("sigma_margin"), "spacetime.sigma_margin");
    if (!(s.fiber_speed > 0.0)) throw ConfigError("spacetime.fiber_speed: must be > 0");
    if (!(s.light_speed > 0.0)) throw ConfigError("spacetime.light_speed: must be > 0");

    for (const json& node : j.at("nodes")) s.geometry.nodes.push_back(node.get<std::string>());

    for (const json& entry : j.at("distances")) {
        check_keys(entry, "spacetime.distances[]", {"a", "b", "d", "sigma"});
        s.geometry.add_distance(entry.at("a").get<std::string>(),
                                entry.at("b").get<std::string>(),
                                Quantity{get_number(entry.at("d"), "spacetime.distances[].d"),
                                         get_number(entry.at("sigma"),
                                                    "spacetime.distances[].sigma")});
    }
    for (const json& entry : j.at("fibers")) {
        check_keys(entry, "spacetime.fibers[]", {"name", "a", "b", "l", "sigma"});
        s.geometry.fibers.push_back(GeometryTable::Fiber{
            entry.at("name").get<std::string>(), entry.at("a").get<std::string>(),
            entry.at("b").get<std::string>(),
            Quantity{get_number(entry.at("l"), "spacetime.fibers[].l"),
                     get_number(entry.at("sigma"), "spacetime.fibers[].sigma")}});
    }
    for (const json& entry : j.at("delays")) {
        check_keys(entry, "spacetime.delays[]", {"name", "value", "sigma"});
        s.delays.delays[entry.at("name").get<std::string>()] =
            Quantity{get_number(entry.at("value"), "spacetime.delays[].value"),
                     get_number(entry.at("sigma"), "spacetime.delays[].sigma")};
    }
    for (const json& entry : j.at("events")) {
        check_keys(entry, "spacetime.events[]", {"name", "position", "start", "end"});
        EventDef def;
        def.name = entry.at("name").get<std::string>();
        def.position = entry.at("position").get<std::string>();
        for (const json& t : entry.at("start")) def.start_terms.push_back(t.get<std::string>());
        for (const json& t : entry.at("end")) def.end_terms.push_back(t.get<std::string>());
        s.events.push_back(std::move(def));
    }
    for (const json& entry : j.at("pairs")) {
        if (!entry.is_array() || entry.size() != 2)
            throw ConfigError("spacetime.pairs[]: expected [event_a, event_b]");
        s.pairs.emplace_back(entry[0].get<std::string>(), entry[1].get<std::string>());
    }

    try {
        s.geometry.validate();
        s.delays.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("spacetime: ") + e.what());
    }
    return s;
}

WorkbenchConfig config_from_json(const json& j) {
    WorkbenchConfig c;
    c.scenario = scenario_from_json(j.at("scenario"));
    c.statistics = statistics_from_json(j.at("statistics"));
    c.optimization = optimization_from_json(j.at("optimization"));
    c.spacetime = spacetime_from_json(j.at("spacetime"));
    return c;
}

}  // namespace

Scenario WorkbenchConfig::make_scenario() const {
    Scenario s;
    s.source1 = SourceSpec{scenario.alpha1, scenario.v1};
    s.source2 = SourceSpec{scenario.alpha2, scenario.v2};
    s.bsm = BsmSpec{scenario.vh};
    s.alice_settings = scenario.alice_settings;
    s.charlie_settings = scenario.charlie_settings;
    validate(s);
    return s;
}

double parse_angle(const json& value, const std::string& field) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        std::string text = value.get<std::string>();
        double factor = 1.0;
        if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
            factor = std::numbers::pi;
            text = text.substr(0, text.size() - 2);
            if (text.empty()) return factor;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            return v * factor;
        } catch (const std::exception&) {
            throw ConfigError(field + ": cannot parse angle '" + value.get<std::string>() +
                              "' (use radians or a 'pi' suffix such as \"0.25pi\")");
        }
    }
    throw ConfigError(field + ": expected a number or a string angle");
}

WorkbenchConfig default_workbench_config() {
    return config_from_json(json::parse(kDefaultConfig));
}

WorkbenchConfig parse_workbench_config(const std::string& text) {
    json user;
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) {
        user = json::object();
    } else {
        try {
            user = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    json resolved = json::parse(kDefaultConfig);
    merge_over_defaults(resolved, user, "");
    return config_from_json(resolved);
}

WorkbenchConfig load_workbench_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_workbench_config(buffer.str());
}

json config_to_json(const WorkbenchConfig& c) {
    json j;
    j["scenario"] = {
        {"alpha1", c.scenario.alpha1},
        {"alpha2", c.scenario.alpha2},
        {"v1", c.scenario.v1},
        {"v2", c.scenario.v2},
        {"vh", c.scenario.vh},
        {"alice_settings",
         {{c.scenario.alice_settings[0].nx, c.scenario.alice_settings[0].ny,
           c.scenario.alice_settings[0].nz},
          {c.scenario.alice_settings[1].nx, c.scenario.alice_settings[1].ny,
           c.scenario.alice_settings[1].nz}}},
        {"charlie_settings",
         {{c.scenario.charlie_settings[0].nx, c.scenario.charlie_settings[0].ny,
           c.scenario.charlie_settings[0].nz},
          {c.scenario.charlie_settings[1].nx, c.scenario.charlie_settings[1].ny,
           c.scenario.charlie_settings[1].nz}}}};
    j["statistics"] = {{"total", c.statistics.total},
                       {"seed", c.statistics.seed},
                       {"bootstrap_resamples", c.statistics.bootstrap_resamples}};
    j["optimization"] = {{"n_lambda", c.optimization.n_lambda},
                         {"restarts", c.optimization.restarts},
                         {"iters", c.optimization.iters}};

    json distances = json::array();
    for (const auto& [pair, d] : c.spacetime.geometry.distances)
        distances.push_back(
            {{"a", pair.first}, {"b", pair.second}, {"d", d.value}, {"sigma", d.sigma}});
    json fibers = json::array();
    for (const auto& f : c.spacetime.geometry.fibers)
        fibers.push_back({{"name", f.name},
                          {"a", f.node_a},
                          {"b", f.node_b},
                          {"l", f.length.value},
                          {"sigma", f.length.sigma}});
    json delays = json::array();
    for (const auto& [name, q] : c.spacetime.delays.delays)
        delays.push_back({{"name", name}, {"value", q.value}, {"sigma", q.sigma}});
    json events = json::array();
    for (const auto& e : c.spacetime.events)
        events.push_back({{"name", e.name},
                          {"position", e.position},
                          {"start", e.start_terms},
                          {"end", e.end_terms}});
    json pairs = json::array();
    for (const auto& [a, b] : c.spacetime.pairs) pairs.push_back({a, b});

    j["spacetime"] = {{"fiber_speed", c.spacetime.fiber_speed},
                      {"light_speed", c.spacetime.light_speed},
                      {"sigma_margin", c.spacetime.sigma_margin},
                      {"nodes", c.spacetime.geometry.nodes},
                      {"distances", distances},
                      {"fibers", fibers},
                      {"delays", delays},
                      {"events", events},
                      {"pairs", pairs}};
    return j;
}

std::string dump_resolved_config(const WorkbenchConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

std::uint64_t config_hash(const WorkbenchConfig& config) {
    const std::string text = dump_resolved_config(config);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

json cns_model_to_json(const CnsModel& m) {
    json boxes = json::array();
    for (const NsBox& box : m.boxes) {
        json q = json::array();
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                for (int z = 0; z < 2; ++z) q.push_back(box.q[b][c][z]);
        boxes.push_back(q);
    }
    json responses = json::array();
    for (const auto& r : m.alice_response) responses.push_back({r[0], r[1]});
    return {{"kind", "cns"},
            {"weights", m.weights},
            {"alice_response", responses},
            {"boxes", boxes},
            {"charlie_marginal",
             {{m.charlie_marginal[0][0], m.charlie_marginal[0][1]},
              {m.charlie_marginal[1][0], m.charlie_marginal[1][1]}}}};
}

CnsModel cns_model_from_json(const json& j) {
    if (j.at("kind").get<std::string>() != "cns")
        throw ConfigError("model kind mismatch: expected cns");
    CnsModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    for (const json& r : j.at("alice_response"))
        m.alice_response.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
    for (const json& q : j.at("boxes")) {
        NsBox box;
        int i = 0;
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 2; ++c)
                for (int z = 0; z < 2; ++z) box.q[b][c][z] = q.at(i++).get<double>();
        m.boxes.push_back(box);
    }
    for (int c = 0; c < 2; ++c)
        for (int z = 0; z < 2; ++z)
            m.charlie_marginal[c][z] = j.at("charlie_marginal").at(c).at(z).get<double>();
    return m;
}

json nsc_model_to_json(const NscModel& m) {
    json boxes = json::array();
    for (const AbBox& box : m.boxes) {
        json q = json::array();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int x = 0; x < 2; ++x) q.push_back(box.q[a][b][x]);
        boxes.push_back(q);
    }
    json responses = json::array();
    for (const auto& r : m.charlie_response) responses.push_back({r[0], r[1]});
    return {{"kind", "nsc"},
            {"weights", m.weights},
            {"charlie_response", responses},
            {"boxes", boxes},
            {"alice_marginal",
             {{m.alice_marginal[0][0], m.alice_marginal[0][1]},
              {m.alice_marginal[1][0], m.alice_marginal[1][1]}}}};
}

NscModel nsc_model_from_json(const json& j) {
    if (j.at("kind").get<std::string>() != "nsc")
        throw ConfigError("model kind mismatch: expected nsc");
    NscModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    for (const json& r : j.at("charlie_response"))
        m.charlie_response.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
    for (const json& q : j.at("boxes")) {
        AbBox box;
        int i = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int x = 0; x < 2; ++x) box.q[a][b][x] = q.at(i++).get<double>();
        m.boxes.push_back(box);
    }
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            m.alice_marginal[a][x] = j.at("alice_marginal").at(a).at(x).get<double>();
    return m;
}

}  // namespace fnn
