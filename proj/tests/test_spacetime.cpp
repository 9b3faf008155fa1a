#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fnn/config.hpp"
#include "fnn/spacetime.hpp"

using namespace fnn;

namespace {

const SpacetimeConfig& default_spacetime() {
    static const WorkbenchConfig config = default_workbench_config();
    return config.spacetime;
}

const EventWindow& window(const std::vector<EventWindow>& windows, const std::string& name) {
    for (const EventWindow& w : windows)
        if (w.name == name) return w;
    throw std::runtime_error("missing window " + name);
}

struct TableRow {
    const char* a;
    const char* b;
    double d;
    double dt;
    double ds2;
    double sigma;
};

// The twelve reference separation results.
constexpr TableRow kExpected[12] = {
    {"S1", "S2", 195, 235.55, 33038, 392},
    {"QRNG_A", "S1", 110, 335.0, 2013, 226},
    {"QRNG_A", "S2", 306, 416.15, 78071, 617},
    {"QRNG_A", "M_B", 199, 461.05, 20496, 439},
    {"QRNG_A", "M_C", 384, 404.6, 132743, 787},
    {"QRNG_A", "QRNG_C", 384, 154.6, 145308, 771},
    {"M_A", "S2", 306, 901.35, 20618, 638},
    {"QRNG_C", "S1", 277, 233.4, 71833, 556},
    {"QRNG_C", "S2", 104, 314.55, 1924, 214},
    {"QRNG_C", "M_A", 384, 639.8, 110666, 814},
    {"QRNG_C", "M_B", 192, 562.65, 8412, 446},
    {"M_C", "S1", 277, 686.6, 34360, 571},
};

}  // namespace

TEST_CASE("worked timeline values") {
    const SpacetimeConfig& st = default_spacetime();
    const auto windows =
        compute_event_windows(st.geometry, st.delays, st.events, st.fiber_speed);

    const EventWindow& ma = window(windows, "M_A");
    CHECK(ma.start.value == doctest::Approx(862.95).epsilon(1e-9));
    CHECK(std::round(ma.start_sigma * 10.0) / 10.0 == doctest::Approx(1.0));

    const EventWindow& qa = window(windows, "QRNG_A");
    CHECK(qa.start.value == doctest::Approx(363.15).epsilon(1e-9));
    CHECK(std::round(qa.start_sigma * 10.0) / 10.0 == doctest::Approx(2.3));

    CHECK(ma.end.value == doctest::Approx(901.35).epsilon(1e-9));
    CHECK(std::round(ma.end_sigma * 10.0) / 10.0 == doctest::Approx(1.1));
}

TEST_CASE("all twelve reference separations are reproduced") {
    const SpacetimeConfig& st = default_spacetime();
    const AuditReport report = audit_all(st.geometry, st.delays, st.events, st.pairs,
                                         st.fiber_speed, st.light_speed, st.sigma_margin);
    REQUIRE(report.results.size() == 12);
    CHECK(report.all_spacelike);

    for (int i = 0; i < 12; ++i) {
        const SeparationResult& r = report.results[i];
        const TableRow& e = kExpected[i];
        INFO(e.a << " -- " << e.b);
        CHECK(r.event_a == e.a);
        CHECK(r.event_b == e.b);
        CHECK(r.distance.value == doctest::Approx(e.d));
        CHECK(r.delta_t.value == doctest::Approx(e.dt).epsilon(1e-9));
        CHECK(std::abs(r.interval2.value - e.ds2) <= 2.0);
        CHECK(std::abs(r.interval2.sigma / e.sigma - 1.0) <= 0.05);
        CHECK(r.spacelike);
    }
}

TEST_CASE("co-located events one nanosecond apart are timelike") {
    GeometryTable g;
    DelayTable delays;
    delays.delays["t1"] = Quantity{1.0, 0.0};
    std::vector<EventDef> events = {{"first", "lab", {}, {}},
                                    {"second", "lab", {"+t1"}, {"+t1"}}};
    const auto windows = compute_event_windows(g, delays, events, 0.2);
    std::map<std::string, double> sigmas = {{"t1", 0.0}};
    const SeparationResult r = separation(windows[0], windows[1], g, sigmas);
    CHECK(r.distance.value == 0.0);
    CHECK(r.delta_t.value == doctest::Approx(1.0));
    CHECK(r.interval2.value == doctest::Approx(-0.0899).epsilon(2e-3));
    CHECK_FALSE(r.spacelike);
}

TEST_CASE("separation is symmetric under pair order") {
    const SpacetimeConfig& st = default_spacetime();
    std::vector<std::pair<std::string, std::string>> forward = {{"S1", "S2"}};
    std::vector<std::pair<std::string, std::string>> backward = {{"S2", "S1"}};
    const AuditReport f = audit_all(st.geometry, st.delays, st.events, forward,
                                    st.fiber_speed, st.light_speed, 0.0);
    const AuditReport b = audit_all(st.geometry, st.delays, st.events, backward,
                                    st.fiber_speed, st.light_speed, 0.0);
    CHECK(f.results[0].interval2.value == doctest::Approx(b.results[0].interval2.value));
    CHECK(f.results[0].delta_t.value == doctest::Approx(b.results[0].delta_t.value));
}

TEST_CASE("scaling every distance scales the distance term quadratically") {
    const SpacetimeConfig& st = default_spacetime();
    GeometryTable scaled = st.geometry;
    for (auto& [pair, q] : scaled.distances) {
        q.value *= 2.0;
        q.sigma *= 2.0;
    }

    const AuditReport base = audit_all(st.geometry, st.delays, st.events, {{"S1", "S2"}},
                                       st.fiber_speed, st.light_speed, 0.0);
    const AuditReport twice = audit_all(scaled, st.delays, st.events, {{"S1", "S2"}},
                                        st.fiber_speed, st.light_speed, 0.0);
    // ds2' = (2d)^2 - c^2 dt^2 = ds2 + 3 d^2 with the time term unchanged.
    const double d = base.results[0].distance.value;
    const double expected = base.results[0].interval2.value + 3.0 * d * d;
    CHECK(twice.results[0].interval2.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(twice.results[0].delta_t.value == doctest::Approx(base.results[0].delta_t.value));
}

TEST_CASE("a long setting-generation delay breaks the audit") {
    const SpacetimeConfig& st = default_spacetime();
    DelayTable slow = st.delays;
    slow.delays["dT_QRNG_A"].value += 400.0;
    const AuditReport report = audit_all(st.geometry, slow, st.events, st.pairs,
                                         st.fiber_speed, st.light_speed, 0.0);
    CHECK_FALSE(report.all_spacelike);
    bool some_failed = false;
    for (const auto& r : report.results) some_failed = some_failed || !r.spacelike;
    CHECK(some_failed);
}

TEST_CASE("input validation") {
    GeometryTable bad;
    bad.nodes = {"A", "B", "C"};
    bad.add_distance("A", "B", {10, 0.01});
    bad.add_distance("B", "C", {2, 0.01});
    bad.add_distance("A", "C", {30, 0.01});
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    GeometryTable nonpositive;
    nonpositive.nodes = {"A", "B"};
    nonpositive.add_distance("A", "B", {0.0, 0.1});
    CHECK_THROWS_AS(nonpositive.validate(), std::invalid_argument);

    DelayTable negative;
    negative.delays["d"] = Quantity{-1.0, 0.1};
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);

    // Unknown term name in an event definition.
    GeometryTable g;
    DelayTable delays;
    delays.delays["t1"] = Quantity{1.0, 0.1};
    std::vector<EventDef> events = {{"e", "lab", {"+missing"}, {"+t1"}}};
    CHECK_THROWS_AS(compute_event_windows(g, delays, events, 0.2), std::invalid_argument);

    // Window that ends before it starts.
    std::vector<EventDef> backwards = {{"e", "lab", {"+t1"}, {}}};
    CHECK_THROWS_AS(compute_event_windows(g, delays, backwards, 0.2),
                    std::invalid_argument);

    // Unknown distance for a pair of events at different nodes.
    const SpacetimeConfig& st = default_spacetime();
    GeometryTable missing = st.geometry;
    missing.distances.erase({"S1", "S2"});
    CHECK_THROWS_AS(audit_all(missing, st.delays, st.events, {{"S1", "S2"}},
                              st.fiber_speed, st.light_speed, 0.0),
                    std::invalid_argument);
}

TEST_CASE("sigma margin tightens the verdict") {
    const SpacetimeConfig& st = default_spacetime();
    // QRNG_C -- S2 has ds2 = 1924 +- 214; at nine sigma it no longer clears.
    const AuditReport strict = audit_all(st.geometry, st.delays, st.events, st.pairs,
                                         st.fiber_speed, st.light_speed, 9.0);
    CHECK_FALSE(strict.all_spacelike);
}
