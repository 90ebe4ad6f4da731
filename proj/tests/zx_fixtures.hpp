#pragma once

// Host-diagram builders shared by the ZX unit tests and the acceptance
// sweep: materialize a rule's lhs as a concrete diagram and derive close-up
// and padded variants from it.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwcau/zx.hpp"

namespace zxfix {

using namespace mwcau;

// Materialize the lhs of a spider rule as a diagram: constrained variables
// become spiders (phase variables filled from `samples` in first-use order),
// all other variables boundary points.
inline ZXDiagram materialize_lhs(const RewriteRule& r, const std::vector<Phase>& samples) {
    ZXDiagram d;
    std::map<VarIndex, std::string> name;
    std::map<std::string, Phase> sample_of;
    std::size_t next_sample = 0;
    for (const auto& [v, c] : r.lhs_labels) {
        Phase p;
        if (c.phase) {
            p = *c.phase;
        } else {
            if (!sample_of.count(c.phase_var)) sample_of[c.phase_var] = samples.at(next_sample++);
            p = sample_of.at(c.phase_var);
        }
        std::string id = "m" + std::to_string(v);
        d.spiders.push_back({id, *parse_color(c.kind), p});
        name[v] = id;
    }
    for (VarIndex v : r.lhs_vars())
        if (!name.count(v)) {
            std::string id = "leg" + std::to_string(v);
            d.outputs.push_back(id);
            name[v] = id;
        }
    for (const auto& pat : r.lhs)
        d.wires.emplace_back(name.at(pat.terms[0].value), name.at(pat.terms[1].value));
    return d;
}

// Close two boundary legs of `d` into one spider-to-spider wire.
inline ZXDiagram join_legs(const ZXDiagram& d, const std::string& b1, const std::string& b2) {
    ZXDiagram out = d;
    auto far = [&](const std::string& b) {
        for (const auto& [x, y] : out.wires) {
            if (x == b) return y;
            if (y == b) return x;
        }
        throw std::runtime_error("no wire at " + b);
    };
    std::string f1 = far(b1), f2 = far(b2);
    auto touches = [&](const std::pair<std::string, std::string>& w) {
        return w.first == b1 || w.second == b1 || w.first == b2 || w.second == b2;
    };
    out.wires.erase(std::remove_if(out.wires.begin(), out.wires.end(), touches), out.wires.end());
    out.wires.emplace_back(f1, f2);
    auto drop = [&](std::vector<std::string>& side) {
        side.erase(std::remove_if(side.begin(), side.end(),
                                  [&](const std::string& n) { return n == b1 || n == b2; }),
                   side.end());
    };
    drop(out.inputs);
    drop(out.outputs);
    return out;
}

inline ZXDiagram pad_with_spectator(const ZXDiagram& d) {
    ZXDiagram out = d;
    out.spiders.push_back({"pad", SpiderColor::Z, Phase(1, 2)});
    out.outputs.push_back("padleg");
    out.wires.emplace_back("pad", "padleg");
    return out;
}

}  // namespace zxfix
