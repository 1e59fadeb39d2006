#include "hawkeslab/model.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace hawkeslab {

std::string to_string(ExcitationMode mode) {
    switch (mode) {
        case ExcitationMode::hawkes: return "hawkes";
        case ExcitationMode::delayed: return "delayed";
        case ExcitationMode::ephemeral: return "ephemeral";
    }
    return "hawkes";
}

ExcitationMode excitation_mode_from_string(const std::string& s) {
    if (s == "hawkes") return ExcitationMode::hawkes;
    if (s == "delayed") return ExcitationMode::delayed;
    if (s == "ephemeral") return ExcitationMode::ephemeral;
    throw std::invalid_argument("unknown excitation mode: " + s);
}

std::string to_string(ServiceSemantics s) {
    return s == ServiceSemantics::rate ? "rate" : "scheduled";
}

ServiceSemantics service_semantics_from_string(const std::string& s) {
    if (s == "rate") return ServiceSemantics::rate;
    if (s == "scheduled") return ServiceSemantics::scheduled;
    throw std::invalid_argument("unknown service_semantics: " + s);
}

double RateMap::apply(double lambda0, double x) const {
    switch (kind) {
        case Kind::linear: return lambda0 + x;
        case Kind::constant: return lambda0;
        case Kind::clamp: return std::min(lambda0 + x, cap);
        case Kind::saturating: return lambda0 + std::min(x, cap);
    }
    return lambda0 + x;
}

bool NetworkModel::is_linear() const {
    if (!rate_maps) return true;
    for (const auto& m : *rate_maps)
        if (!m.is_linear()) return false;
    return true;
}

bool NetworkModel::has_routing() const {
    for (const auto& row : mu_route)
        for (double r : row)
            if (r > 0.0) return true;
    return false;
}

double NetworkModel::total_service_rate(int j) const {
    double total = mu[j];
    for (int i = 0; i < d; ++i) total += mu_route[i][j];
    return total;
}

RateMap NetworkModel::rate_map(int i) const {
    if (!rate_maps) return RateMap::linear();
    return (*rate_maps)[i];
}

ServiceDistribution NetworkModel::lifetime(int j) const {
    if (semantics == ServiceSemantics::scheduled) return services[j];
    if (!(mu[j] > 0.0))
        throw std::invalid_argument("lifetime: rate semantics with mu = 0 has no finite lifetime");
    return ServiceDistribution::exponential(mu[j]);
}

bool NetworkModel::is_markovian() const {
    for (int i = 0; i < d; ++i) {
        double r = -1.0;
        for (int j = 0; j < d; ++j) {
            const Kernel& k = kernels[i][j];
            if (k.is_zero()) continue;
            if (k.shape() != Kernel::Shape::exponential) return false;
            if (r < 0.0) r = k.rate();
            else if (std::fabs(r - k.rate()) > 1e-12 * std::max(1.0, r)) return false;
        }
    }
    return true;
}

double NetworkModel::markov_rate(int i) const {
    for (int j = 0; j < d; ++j) {
        const Kernel& k = kernels[i][j];
        if (!k.is_zero() && k.shape() == Kernel::Shape::exponential) return k.rate();
    }
    return 1.0;  // row never excites; any decay rate is consistent
}

NetworkModel NetworkModel::univariate(double lambda0, Kernel kernel, MarkDistribution mark,
                                      ServiceDistribution service, double mu,
                                      ExcitationMode mode, ServiceSemantics semantics) {
    NetworkModel m;
    m.d = 1;
    m.lambda0 = {lambda0};
    m.kernels = {{std::move(kernel)}};
    m.marks = {{std::move(mark)}};
    m.services = {std::move(service)};
    m.mu = {mu};
    m.mu_route = {{0.0}};
    m.mode = mode;
    m.semantics = semantics;
    return m;
}

void validate_network(const NetworkModel& model) {
    const int d = model.d;
    if (d < 1) throw std::invalid_argument("model: d must be >= 1");
    auto check_dim = [&](std::size_t n, const char* what) {
        if (n != static_cast<std::size_t>(d))
            throw std::invalid_argument(std::string("model: wrong dimension for ") + what);
    };
    check_dim(model.lambda0.size(), "lambda0");
    check_dim(model.kernels.size(), "kernels");
    check_dim(model.marks.size(), "marks");
    check_dim(model.services.size(), "services");
    check_dim(model.mu.size(), "mu");
    check_dim(model.mu_route.size(), "mu_route");
    for (int i = 0; i < d; ++i) {
        check_dim(model.kernels[i].size(), "kernels row");
        check_dim(model.marks[i].size(), "marks row");
        check_dim(model.mu_route[i].size(), "mu_route row");
    }
    if (model.rate_maps) check_dim(model.rate_maps->size(), "phi");

    for (double l : model.lambda0)
        if (l < 0.0 || !std::isfinite(l)) throw std::invalid_argument("model: lambda0 must be >= 0");
    for (double m : model.mu)
        if (m < 0.0) throw std::invalid_argument("model: mu must be >= 0");
    for (const auto& row : model.mu_route)
        for (double r : row)
            if (r < 0.0) throw std::invalid_argument("model: mu_route must be >= 0");

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Kernel& k = model.kernels[i][j];
            if (!std::isfinite(k.l1_norm()) || !std::isfinite(k.sup_norm()))
                throw std::invalid_argument("invalid-kernel: norms must be finite");
            if (!(model.marks[i][j].mean() > 0.0))
                throw std::invalid_argument("nonpositive-mark");
        }

    // Departure reachability: from every coordinate a positive-rate routing
    // chain must lead to a coordinate with mu > 0.
    std::vector<bool> can_exit(d, false);
    std::deque<int> frontier;
    for (int j = 0; j < d; ++j)
        if (model.mu[j] > 0.0) {
            can_exit[j] = true;
            frontier.push_back(j);
        }
    while (!frontier.empty()) {
        int i = frontier.front();
        frontier.pop_front();
        for (int j = 0; j < d; ++j) {
            if (!can_exit[j] && model.mu_route[i][j] > 0.0) {
                can_exit[j] = true;  // j routes into i, and i can exit
                frontier.push_back(j);
            }
        }
    }
    for (int j = 0; j < d; ++j)
        if (!can_exit[j])
            throw std::invalid_argument("unreachable-departure(" + std::to_string(j) + ")");
}

std::vector<std::vector<double>> branching_matrix(const NetworkModel& model) {
    const int d = model.d;
    std::vector<std::vector<double>> H(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) {
        double L = model.rate_map(i).lipschitz();
        for (int j = 0; j < d; ++j)
            H[i][j] = L * model.marks[i][j].mean() * model.kernels[i][j].l1_norm();
    }
    return H;
}

StabilityResult stability_check(const NetworkModel& model) {
    validate_network(model);
    auto H = branching_matrix(model);
    const int d = model.d;
    std::vector<double> v(d, 1.0), w(d, 0.0);
    double radius = 0.0;
    for (int it = 0; it < 10000; ++it) {
        double norm = 0.0;
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j) acc += H[i][j] * v[j];
            w[i] = acc;
            norm = std::max(norm, std::fabs(acc));
        }
        if (norm == 0.0) {
            radius = 0.0;
            break;
        }
        for (int i = 0; i < d; ++i) w[i] /= norm;
        double prev = radius;
        radius = norm;
        v.swap(w);
        if (it > 0 && std::fabs(radius - prev) <= 1e-12 * std::max(1.0, radius)) break;
    }
    return {radius, radius < 1.0};
}

}  // namespace hawkeslab
