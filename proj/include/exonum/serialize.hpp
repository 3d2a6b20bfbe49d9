#pragma once

// JSON forms of the interchange types (header-only, pulls in nlohmann).

#include <json.hpp>

#include "exonum/numeration.hpp"
#include "exonum/summatory.hpp"

namespace exonum {

// {"system": "...", "digits": "10010", "value": ...}; digit strings are
// plain ASCII msb-first, eps is "".
inline nlohmann::ordered_json word_to_json(const numeration::DigitWord& w) {
    Int v = numeration::val(w);
    nlohmann::ordered_json j;
    j["system"] = w.system->name();
    j["digits"] = w.str();
    if (bit_length(v) <= 53)
        j["value"] = v.get_si();
    else
        j["value"] = v.get_str();
    return j;
}

inline numeration::DigitWord word_from_json(const nlohmann::ordered_json& j) {
    const std::string sysname = j.at("system").get<std::string>();
    const numeration::NumerationSystem* sys = nullptr;
    if (sysname == "fibonacci")
        sys = &numeration::NumerationSystem::fibonacci();
    else if (sysname == "tribonacci")
        sys = &numeration::NumerationSystem::tribonacci();
    else if (sysname == "quadribonacci")
        sys = &numeration::NumerationSystem::quadribonacci();
    else if (sysname.rfind("boundedrun", 0) == 0)
        sys = &numeration::NumerationSystem::bounded_run(std::stoi(sysname.substr(10)));
    else if (sysname.rfind("base", 0) == 0)
        sys = &numeration::NumerationSystem::base_k(std::stoi(sysname.substr(4)));
    else
        throw DomainError("word_from_json: unknown system " + sysname);
    return numeration::DigitWord::parse(j.at("digits").get<std::string>(), *sys);
}

// {"beta","beta2","beta3","c","c2","c3"} with 20 significant digits; the
// values are carried as strings so the digits survive JSON round-trips.
inline nlohmann::ordered_json spectral_to_json(const summatory::SpectralData& sd) {
    auto f = [](real128 x) { return format_real128(x, 20); };
    nlohmann::ordered_json j;
    j["beta"] = f(sd.beta);
    j["beta2"] = f(sd.beta2);
    j["beta3"] = f(sd.beta3);
    j["c"] = f(sd.c);
    j["c2"] = f(sd.c2);
    j["c3"] = f(sd.c3);
    return j;
}

}  // namespace exonum
