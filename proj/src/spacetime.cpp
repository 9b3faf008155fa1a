#include "fnn/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fnn {

namespace {

std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void GeometryTable::add_distance(const std::string& a, const std::string& b, Quantity d) {
    distances[ordered(a, b)] = d;
}

Quantity GeometryTable::distance(const std::string& a, const std::string& b) const {
    const auto it = distances.find(ordered(a, b));
    if (it == distances.end())
        throw std::invalid_argument("unknown pair distance: " + a + " -- " + b);
    return it->second;
}

void GeometryTable::validate() const {
    for (const auto& [pair, d] : distances) {
        if (!(d.value > 0.0))
            throw std::invalid_argument("distance must be positive: " + pair.first + " -- " +
                                        pair.second);
    }
    for (const Fiber& f : fibers) {
        if (!(f.length.value > 0.0))
            throw std::invalid_argument("fiber length must be positive: " + f.name);
    }
    // Triangle inequality across every fully listed triple, with quadrature
    // slack from the three uncertainties.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            for (std::size_t k = j + 1; k < nodes.size(); ++k) {
                const auto ij = distances.find(ordered(nodes[i], nodes[j]));
                const auto jk = distances.find(ordered(nodes[j], nodes[k]));
                const auto ik = distances.find(ordered(nodes[i], nodes[k]));
                if (ij == distances.end() || jk == distances.end() || ik == distances.end())
                    continue;
                const double slack = std::sqrt(ij->second.sigma * ij->second.sigma +
                                               jk->second.sigma * jk->second.sigma +
                                               ik->second.sigma * ik->second.sigma) +
                                     1e-9;
                auto check = [&](double lhs, double r1, double r2) {
                    if (lhs > r1 + r2 + slack)
                        throw std::invalid_argument("triangle inequality violated around " +
                                                    nodes[i] + "/" + nodes[j] + "/" + nodes[k]);
                };
                check(ij->second.value, jk->second.value, ik->second.value);
                check(jk->second.value, ij->second.value, ik->second.value);
                check(ik->second.value, ij->second.value, jk->second.value);
            }
        }
    }
}

Quantity DelayTable::delay(const std::string& name) const {
    const auto it = delays.find(name);
    if (it == delays.end()) throw std::invalid_argument("missing delay entry: " + name);
    return it->second;
}

void DelayTable::validate() const {
    for (const auto& [name, q] : delays)
        if (q.value < 0.0) throw std::invalid_argument("delay must be nonnegative: " + name);
}

double AffineTime::sigma(const std::map<std::string, double>& param_sigmas) const {
    double ss = 0.0;
    for (const auto& [name, coef] : coefficients) {
        const auto it = param_sigmas.find(name);
        if (it == param_sigmas.end())
            throw std::invalid_argument("missing uncertainty for parameter: " + name);
        ss += (coef * it->second) * (coef * it->second);
    }
    return std::sqrt(ss);
}

namespace {

AffineTime resolve_terms(const std::vector<std::string>& terms,
                         const GeometryTable& geometry, const DelayTable& delays,
                         double fiber_speed) {
    AffineTime t;
    for (const std::string& term : terms) {
        if (term.size() < 2 || (term[0] != '+' && term[0] != '-'))
            throw std::invalid_argument("event term must start with '+' or '-': " + term);
        const double sign = term[0] == '+' ? 1.0 : -1.0;
        const std::string name = term.substr(1);

        const auto fiber = std::find_if(geometry.fibers.begin(), geometry.fibers.end(),
                                        [&](const auto& f) { return f.name == name; });
        if (fiber != geometry.fibers.end()) {
            const double coef = sign / fiber_speed;
            t.coefficients[name] += coef;
            t.value += coef * fiber->length.value;
        } else {
            const Quantity q = delays.delay(name);  // throws when missing
            t.coefficients[name] += sign;
            t.value += sign * q.value;
        }
    }
    return t;
}

std::map<std::string, double> parameter_sigmas(const GeometryTable& geometry,
                                               const DelayTable& delays) {
    std::map<std::string, double> sigmas;
    for (const auto& [name, q] : delays.delays) sigmas[name] = q.sigma;
    for (const auto& f : geometry.fibers) sigmas[f.name] = f.length.sigma;
    return sigmas;
}

}  // namespace

std::vector<EventWindow> compute_event_windows(const GeometryTable& geometry,
                                               const DelayTable& delays,
                                               const std::vector<EventDef>& events,
                                               double fiber_speed) {
    if (!(fiber_speed > 0.0)) throw std::invalid_argument("fiber speed must be positive");
    geometry.validate();
    delays.validate();

    const auto sigmas = parameter_sigmas(geometry, delays);
    std::vector<EventWindow> windows;
    windows.reserve(events.size());
    for (const EventDef& def : events) {
        EventWindow w;
        w.name = def.name;
        w.position = def.position;
        w.start = resolve_terms(def.start_terms, geometry, delays, fiber_speed);
        w.end = resolve_terms(def.end_terms, geometry, delays, fiber_speed);
        if (w.end.value < w.start.value - 1e-9)
            throw std::invalid_argument("event window ends before it starts: " + def.name);
        w.start_sigma = w.start.sigma(sigmas);
        w.end_sigma = w.end.sigma(sigmas);
        windows.push_back(std::move(w));
    }
    return windows;
}

SeparationResult separation(const EventWindow& a, const EventWindow& b,
                            const GeometryTable& geometry,
                            const std::map<std::string, double>& param_sigmas,
                            double light_speed) {
    SeparationResult r;
    r.event_a = a.name;
    r.event_b = b.name;
    r.distance = a.position == b.position ? Quantity{0.0, 0.0}
                                          : geometry.distance(a.position, b.position);

    // Conservative interval: farthest endpoints of the two windows. The
    // uncertainty comes from the affine difference, so shared delay and fiber
    // terms cancel instead of double counting.
    AffineTime d1;  // a.start - b.end
    d1.value = a.start.value - b.end.value;
    d1.coefficients = a.start.coefficients;
    for (const auto& [name, coef] : b.end.coefficients) d1.coefficients[name] -= coef;

    AffineTime d2;  // a.end - b.start
    d2.value = a.end.value - b.start.value;
    d2.coefficients = a.end.coefficients;
    for (const auto& [name, coef] : b.start.coefficients) d2.coefficients[name] -= coef;

    const AffineTime& widest = std::abs(d1.value) >= std::abs(d2.value) ? d1 : d2;
    r.delta_t = Quantity{std::abs(widest.value), widest.sigma(param_sigmas)};

    const double d = r.distance.value;
    const double dt = r.delta_t.value;
    const double c2 = light_speed * light_speed;
    r.interval2.value = d * d - c2 * dt * dt;
    r.interval2.sigma = std::sqrt(std::pow(2.0 * d * r.distance.sigma, 2) +
                                  std::pow(2.0 * c2 * dt * r.delta_t.sigma, 2));
    r.spacelike = r.interval2.value > 0.0;
    return r;
}

AuditReport audit_all(const GeometryTable& geometry, const DelayTable& delays,
                      const std::vector<EventDef>& events,
                      const std::vector<std::pair<std::string, std::string>>& pairs,
                      double fiber_speed, double light_speed, double sigma_margin) {
    const std::vector<EventWindow> windows =
        compute_event_windows(geometry, delays, events, fiber_speed);
    const auto sigmas = parameter_sigmas(geometry, delays);

    auto find_window = [&](const std::string& name) -> const EventWindow& {
        const auto it = std::find_if(windows.begin(), windows.end(),
                                     [&](const EventWindow& w) { return w.name == name; });
        if (it == windows.end())
            throw std::invalid_argument("unknown event in pair list: " + name);
        return *it;
    };

    AuditReport report;
    report.sigma_margin = sigma_margin;
    report.all_spacelike = true;
    for (const auto& [name_a, name_b] : pairs) {
        SeparationResult r =
            separation(find_window(name_a), find_window(name_b), geometry, sigmas, light_speed);
        if (!(r.interval2.value - sigma_margin * r.interval2.sigma > 0.0))
            report.all_spacelike = false;
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace fnn
