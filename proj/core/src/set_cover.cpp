#include "crewcg/set_cover.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crewcg {

std::vector<int> SetCoverInstance::uncovered_flights() const {
    std::vector<char> covered(static_cast<std::size_t>(num_flights), 0);
    for (const Column& c : columns) {
        for (int f : c.flights) {
            if (f < 0 || f >= num_flights) {
                throw std::invalid_argument("column references flight " + std::to_string(f) +
                                            " outside [0, " + std::to_string(num_flights) + ")");
            }
            covered[static_cast<std::size_t>(f)] = 1;
        }
    }
    std::vector<int> missing;
    for (int f = 0; f < num_flights; ++f) {
        if (!covered[static_cast<std::size_t>(f)]) missing.push_back(f);
    }
    return missing;
}

void SetCoverInstance::dump(std::ostream& out) const {
    out << "setcover " << num_flights << ' ' << columns.size() << '\n';
    out.precision(17);
    for (const Column& c : columns) {
        out << c.cost << ' ' << c.flights.size();
        for (int f : c.flights) out << ' ' << f;
        out << '\n';
    }
}

SetCoverInstance SetCoverInstance::parse(std::istream& in) {
    std::string tag;
    SetCoverInstance inst;
    std::size_t ncols = 0;
    if (!(in >> tag >> inst.num_flights >> ncols) || tag != "setcover") {
        throw std::invalid_argument("set-cover parse: bad header");
    }
    inst.columns.resize(ncols);
    for (Column& c : inst.columns) {
        std::size_t k = 0;
        if (!(in >> c.cost >> k)) {
            throw std::invalid_argument("set-cover parse: truncated column");
        }
        c.flights.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (!(in >> c.flights[i])) {
                throw std::invalid_argument("set-cover parse: truncated flight list");
            }
        }
    }
    return inst;
}

}  // namespace crewcg
