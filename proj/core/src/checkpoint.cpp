#include "minkmom/checkpoint.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace minkmom {

using nlohmann::json;

std::string checkpoint_to_json(const MomentVector& m) {
    PrecisionScope scope(m.ctx());
    json j;
    j["format"] = "minkmom-moments-v1";
    j["digits"] = m.digits;
    j["order"] = m.order();
    j["backend"] = backend_name(m.backend);
    j["iterations"] = m.iterations;
    j["converged"] = m.converged;
    j["at_error_floor"] = m.at_error_floor;
    j["final_step"] = to_decimal_string(m.final_step, 8);
    j["check_epsilon"] = to_decimal_string(m.check_epsilon, 8);
    json values = json::array();
    for (const Real& v : m.values)
        values.push_back(to_decimal_string(v, m.digits + 12));
    j["values"] = std::move(values);
    return j.dump(1);
}

void save_checkpoint(const MomentVector& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open checkpoint for writing: " + path);
    out << checkpoint_to_json(m) << "\n";
}

LoadedCheckpoint checkpoint_from_json(const std::string& text, int requested_digits) {
    json j = json::parse(text);
    if (j.value("format", "") != std::string("minkmom-moments-v1"))
        throw std::runtime_error("not a moment checkpoint");
    LoadedCheckpoint lc;
    MomentVector& m = lc.moments;
    m.digits = j.at("digits").get<int>();
    m.backend = backend_from_name(j.at("backend").get<std::string>());
    m.iterations = j.at("iterations").get<int>();
    m.converged = j.value("converged", false);
    m.at_error_floor = j.value("at_error_floor", false);
    const int order = j.at("order").get<int>();
    PrecisionScope scope(m.ctx());
    m.final_step = Real(j.at("final_step").get<std::string>());
    m.check_epsilon = Real(j.value("check_epsilon", "0"));
    const auto& values = j.at("values");
    if (static_cast<int>(values.size()) != order + 1)
        throw std::runtime_error("checkpoint order does not match value count");
    m.values.reserve(values.size());
    for (const auto& v : values)
        m.values.emplace_back(v.get<std::string>());
    lc.needs_reiteration = requested_digits > m.digits;
    return lc;
}

LoadedCheckpoint load_checkpoint(const std::string& path, int requested_digits) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open checkpoint: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return checkpoint_from_json(text, requested_digits);
}

} // namespace minkmom
