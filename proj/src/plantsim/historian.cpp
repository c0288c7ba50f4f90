#include "aquafuzz/plantsim/historian.hpp"

#include <fstream>
#include <ostream>

namespace aquafuzz::plantsim {

void Historian::write(std::ostream& out) const {
    out << "# aquafuzz-historian v1\n";
    char buf[64];
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        for (SensorId id : kAllSensors) {
            std::snprintf(buf, sizeof buf, "%.6f", rows_[t][static_cast<std::size_t>(id)]);
            out << t << ',' << to_string(id) << ',' << buf << "\n";
        }
    }
}

void Historian::write_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write historian log: " + path);
    write(f);
}

} // namespace aquafuzz::plantsim
