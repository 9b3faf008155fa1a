#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fnn {

inline constexpr double kSpeedOfLight = 0.299792;  // m/ns

struct Quantity {
    double value = 0.0;
    double sigma = 0.0;
};

// Straight-line distances between node pairs plus the fiber links connecting
// them. Distances are validated as positive and triangle-consistent within
// the stated uncertainties.
struct GeometryTable {
    struct Fiber {
        std::string name;  // referenced by event definitions
        std::string node_a;
        std::string node_b;
        Quantity length;  // meters
    };

    std::vector<std::string> nodes;
    std::map<std::pair<std::string, std::string>, Quantity> distances;  // meters
    std::vector<Fiber> fibers;

    void add_distance(const std::string& a, const std::string& b, Quantity d);
    Quantity distance(const std::string& a, const std::string& b) const;
    void validate() const;
};

struct DelayTable {
    std::map<std::string, Quantity> delays;  // nanoseconds, all >= 0

    Quantity delay(const std::string& name) const;
    void validate() const;
};

// Event endpoints are affine combinations of the named delays and fiber
// transit times, so a difference of two endpoints cancels shared terms before
// uncertainties are combined in quadrature. The trial origin (coefficient-free
// zero) is the reference pump pulse.
struct AffineTime {
    double value = 0.0;
    std::map<std::string, double> coefficients;  // parameter name -> coefficient

    double sigma(const std::map<std::string, double>& param_sigmas) const;
};

// Declarative timing topology: each endpoint is a list of signed terms, e.g.
// "+dT_S2", "-l_B1" (fiber names contribute length / fiber_speed).
struct EventDef {
    std::string name;
    std::string position;  // node label
    std::vector<std::string> start_terms;
    std::vector<std::string> end_terms;
};

struct EventWindow {
    std::string name;
    std::string position;
    AffineTime start;
    AffineTime end;
    double start_sigma = 0.0;
    double end_sigma = 0.0;
};

std::vector<EventWindow> compute_event_windows(const GeometryTable& geometry,
                                               const DelayTable& delays,
                                               const std::vector<EventDef>& events,
                                               double fiber_speed);

struct SeparationResult {
    std::string event_a;
    std::string event_b;
    Quantity distance;   // m
    Quantity delta_t;    // ns, maximum interval between the two windows
    Quantity interval2;  // m^2, d^2 - c^2 dt^2
    bool spacelike = false;
};

SeparationResult separation(const EventWindow& a, const EventWindow& b,
                            const GeometryTable& geometry,
                            const std::map<std::string, double>& param_sigmas,
                            double light_speed = kSpeedOfLight);

struct AuditReport {
    std::vector<SeparationResult> results;
    bool all_spacelike = false;  // every ds^2 - margin * sigma > 0
    double sigma_margin = 0.0;
};

AuditReport audit_all(const GeometryTable& geometry, const DelayTable& delays,
                      const std::vector<EventDef>& events,
                      const std::vector<std::pair<std::string, std::string>>& pairs,
                      double fiber_speed, double light_speed = kSpeedOfLight,
                      double sigma_margin = 0.0);

}  // namespace fnn
