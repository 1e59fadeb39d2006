#include "hawkeslab/model_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hawkeslab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw std::invalid_argument("parse-error: field '" + field + "': " + why);
}

double need_number(const json& j, const std::string& field) {
    if (!j.contains(field)) fail(field, "missing");
    if (!j.at(field).is_number()) fail(field, "expected a number");
    return j.at(field).get<double>();
}

Kernel parse_kernel(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("shape")) fail(where + ".shape", "missing kernel shape");
    std::string shape = j.at("shape").get<std::string>();
    try {
        if (shape == "exponential")
            return Kernel::exponential(need_number(j, "rate"), need_number(j, "scale"));
        if (shape == "power-law")
            return Kernel::power_law(need_number(j, "exponent"), need_number(j, "scale"),
                                     need_number(j, "cutoff"));
        if (shape == "piecewise-constant") {
            if (!j.contains("breakpoints") || !j.contains("values"))
                fail(where, "piecewise-constant needs breakpoints and values");
            return Kernel::piecewise_constant(j.at("breakpoints").get<std::vector<double>>(),
                                              j.at("values").get<std::vector<double>>());
        }
        if (shape == "zero") return Kernel::zero();
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where + ".shape", "unknown shape '" + shape + "'");
}

json kernel_to_json(const Kernel& k) {
    json j;
    switch (k.shape()) {
        case Kernel::Shape::exponential:
            j["shape"] = "exponential";
            j["rate"] = k.rate();
            j["scale"] = k.scale();
            break;
        case Kernel::Shape::power_law:
            j["shape"] = "power-law";
            j["exponent"] = k.exponent();
            j["scale"] = k.scale();
            j["cutoff"] = k.cutoff();
            break;
        case Kernel::Shape::piecewise_constant:
            j["shape"] = "piecewise-constant";
            j["breakpoints"] = k.breakpoints();
            j["values"] = k.values();
            break;
        case Kernel::Shape::zero:
            j["shape"] = "zero";
            break;
    }
    return j;
}

MarkDistribution parse_mark(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) fail(where + ".kind", "missing mark kind");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "deterministic") return MarkDistribution::deterministic(need_number(j, "value"));
        if (kind == "exponential") return MarkDistribution::exponential(need_number(j, "rate"));
        if (kind == "gamma")
            return MarkDistribution::gamma(need_number(j, "shape"), need_number(j, "rate"));
        if (kind == "beta") return MarkDistribution::beta(need_number(j, "a"), need_number(j, "b"));
        if (kind == "pareto")
            return MarkDistribution::pareto(need_number(j, "alpha"), need_number(j, "scale"));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where + ".kind", "unknown kind '" + kind + "'");
}

json mark_to_json(const MarkDistribution& m) {
    json j;
    switch (m.kind()) {
        case MarkDistribution::Kind::deterministic:
            j["kind"] = "deterministic";
            j["value"] = m.p0();
            break;
        case MarkDistribution::Kind::exponential:
            j["kind"] = "exponential";
            j["rate"] = m.p0();
            break;
        case MarkDistribution::Kind::gamma:
            j["kind"] = "gamma";
            j["shape"] = m.p0();
            j["rate"] = m.p1();
            break;
        case MarkDistribution::Kind::beta:
            j["kind"] = "beta";
            j["a"] = m.p0();
            j["b"] = m.p1();
            break;
        case MarkDistribution::Kind::pareto:
            j["kind"] = "pareto";
            j["alpha"] = m.p0();
            j["scale"] = m.p1();
            break;
    }
    return j;
}

ServiceDistribution parse_service(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) fail(where + ".kind", "missing service kind");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "exponential") return ServiceDistribution::exponential(need_number(j, "rate"));
        if (kind == "deterministic")
            return ServiceDistribution::deterministic(need_number(j, "value"));
        if (kind == "lognormal")
            return ServiceDistribution::lognormal(need_number(j, "log_mean"),
                                                  need_number(j, "log_sd"));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where + ".kind", "unknown kind '" + kind + "'");
}

json service_to_json(const ServiceDistribution& s) {
    json j;
    switch (s.kind()) {
        case ServiceDistribution::Kind::exponential:
            j["kind"] = "exponential";
            j["rate"] = s.p0();
            break;
        case ServiceDistribution::Kind::deterministic:
            j["kind"] = "deterministic";
            j["value"] = s.p0();
            break;
        case ServiceDistribution::Kind::lognormal:
            j["kind"] = "lognormal";
            j["log_mean"] = s.p0();
            j["log_sd"] = s.p1();
            break;
    }
    return j;
}

RateMap parse_rate_map(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) fail(where + ".kind", "missing rate map kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") return RateMap::linear();
    if (kind == "constant") return RateMap::constant();
    if (kind == "clamp") return RateMap::clamp(need_number(j, "cap"));
    if (kind == "saturating") return RateMap::saturating(need_number(j, "cap"));
    fail(where + ".kind", "unknown kind '" + kind + "'");
}

json rate_map_to_json(const RateMap& m) {
    json j;
    switch (m.kind) {
        case RateMap::Kind::linear: j["kind"] = "linear"; break;
        case RateMap::Kind::constant: j["kind"] = "constant"; break;
        case RateMap::Kind::clamp:
            j["kind"] = "clamp";
            j["cap"] = m.cap;
            break;
        case RateMap::Kind::saturating:
            j["kind"] = "saturating";
            j["cap"] = m.cap;
            break;
    }
    return j;
}

}  // namespace

NetworkModel parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("parse-error: ") + e.what());
    }
    NetworkModel m;
    if (!j.contains("d")) fail("d", "missing");
    m.d = j.at("d").get<int>();
    if (m.d < 1) fail("d", "must be >= 1");
    auto matrix_dims = [&](const json& arr, const std::string& field) {
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(m.d)) fail(field, "expected d rows");
        for (const auto& row : arr)
            if (!row.is_array() || row.size() != static_cast<std::size_t>(m.d))
                fail(field, "expected d columns per row");
    };

    if (!j.contains("lambda0")) fail("lambda0", "missing");
    m.lambda0 = j.at("lambda0").get<std::vector<double>>();

    if (!j.contains("kernels")) fail("kernels", "missing");
    matrix_dims(j.at("kernels"), "kernels");
    m.kernels.resize(static_cast<std::size_t>(m.d));
    for (int i = 0; i < m.d; ++i)
        for (int jj = 0; jj < m.d; ++jj)
            m.kernels[i].push_back(parse_kernel(j.at("kernels")[i][jj],
                                                "kernels[" + std::to_string(i) + "][" +
                                                    std::to_string(jj) + "]"));

    if (!j.contains("marks")) fail("marks", "missing");
    matrix_dims(j.at("marks"), "marks");
    m.marks.resize(static_cast<std::size_t>(m.d));
    for (int i = 0; i < m.d; ++i)
        for (int jj = 0; jj < m.d; ++jj)
            m.marks[i].push_back(parse_mark(
                j.at("marks")[i][jj], "marks[" + std::to_string(i) + "][" + std::to_string(jj) + "]"));

    if (!j.contains("services")) fail("services", "missing");
    if (!j.at("services").is_array() || j.at("services").size() != static_cast<std::size_t>(m.d))
        fail("services", "expected d entries");
    for (int i = 0; i < m.d; ++i)
        m.services.push_back(parse_service(j.at("services")[i], "services[" + std::to_string(i) + "]"));

    if (!j.contains("mu")) fail("mu", "missing");
    m.mu = j.at("mu").get<std::vector<double>>();

    if (!j.contains("mu_route")) fail("mu_route", "missing");
    matrix_dims(j.at("mu_route"), "mu_route");
    m.mu_route = j.at("mu_route").get<std::vector<std::vector<double>>>();

    if (!j.contains("mode")) fail("mode", "missing");
    try {
        m.mode = excitation_mode_from_string(j.at("mode").get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail("mode", e.what());
    }
    if (j.contains("service_semantics")) {
        try {
            m.semantics = service_semantics_from_string(j.at("service_semantics").get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail("service_semantics", e.what());
        }
    }
    if (j.contains("phi")) {
        if (!j.at("phi").is_array() || j.at("phi").size() != static_cast<std::size_t>(m.d))
            fail("phi", "expected d entries");
        std::vector<RateMap> maps;
        for (int i = 0; i < m.d; ++i)
            maps.push_back(parse_rate_map(j.at("phi")[i], "phi[" + std::to_string(i) + "]"));
        m.rate_maps = std::move(maps);
    }
    try {
        validate_network(m);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("validation: ") + e.what());
    }
    return m;
}

NetworkModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("parse-error: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_model(const NetworkModel& model) {
    json j;
    j["d"] = model.d;
    j["lambda0"] = model.lambda0;
    json kernels = json::array();
    for (int i = 0; i < model.d; ++i) {
        json row = json::array();
        for (int jj = 0; jj < model.d; ++jj) row.push_back(kernel_to_json(model.kernels[i][jj]));
        kernels.push_back(row);
    }
    j["kernels"] = kernels;
    json marks = json::array();
    for (int i = 0; i < model.d; ++i) {
        json row = json::array();
        for (int jj = 0; jj < model.d; ++jj) row.push_back(mark_to_json(model.marks[i][jj]));
        marks.push_back(row);
    }
    j["marks"] = marks;
    json services = json::array();
    for (int i = 0; i < model.d; ++i) services.push_back(service_to_json(model.services[i]));
    j["services"] = services;
    j["mu"] = model.mu;
    j["mu_route"] = model.mu_route;
    j["mode"] = to_string(model.mode);
    j["service_semantics"] = to_string(model.semantics);
    if (model.rate_maps) {
        json maps = json::array();
        for (const RateMap& m : *model.rate_maps) maps.push_back(rate_map_to_json(m));
        j["phi"] = maps;
    }
    return j.dump(2);
}

}  // namespace hawkeslab
