#pragma once

#include <string>

#include "netwalk/errors.hpp"

namespace netwalk {

enum class Model { ER, BA, WAX, LFR };

inline const char* to_string(Model m) {
    switch (m) {
        case Model::ER: return "ER";
        case Model::BA: return "BA";
        case Model::WAX: return "WAX";
        case Model::LFR: return "LFR";
    }
    return "?";
}

inline Model model_from_string(const std::string& name) {
    if (name == "ER") return Model::ER;
    if (name == "BA") return Model::BA;
    if (name == "WAX") return Model::WAX;
    if (name == "LFR") return Model::LFR;
    throw UsageError("unknown model: " + name);
}

} // namespace netwalk
