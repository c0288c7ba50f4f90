#include "aquafuzz/attack/suite.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace aquafuzz::attack {

void suite_save(const std::string& path, std::span<const SuiteRecord> suite) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write attack suite: " + path);
    f << "# aquafuzz-suite v1\n";
    char buf[64];
    for (const SuiteRecord& r : suite) {
        f << to_string(r.sensor) << ',' << r.flips << ',';
        for (std::size_t i = 0; i < r.indices.size(); ++i) {
            if (i > 0) f << ';';
            f << r.indices[i];
        }
        std::snprintf(buf, sizeof buf, "%.9g", r.f_max);
        f << ',' << buf << ',' << (r.success ? 1 : 0) << ',' << r.ticks_to_breach << "\n";
    }
}

std::vector<SuiteRecord> suite_load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open attack suite: " + path);
    std::string line;
    if (!std::getline(f, line) || line != "# aquafuzz-suite v1")
        throw std::runtime_error("attack suite: bad header in " + path);

    std::vector<SuiteRecord> out;
    int line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SuiteRecord r;
        auto next = [&](const char* what) {
            if (!std::getline(ss, field, ','))
                throw std::runtime_error("attack suite: missing " + std::string(what) + " at line " +
                                         std::to_string(line_no));
        };
        next("sensor");
        r.sensor = sensor_from_string(field);
        next("flips");
        r.flips = std::stoi(field);
        next("indices");
        if (!field.empty()) {
            std::stringstream is(field);
            std::string idx;
            while (std::getline(is, idx, ';')) r.indices.push_back(std::stoul(idx));
        }
        next("f_max");
        r.f_max = std::stod(field);
        next("success");
        r.success = field == "1";
        next("ticks_to_breach");
        r.ticks_to_breach = std::stoi(field);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace aquafuzz::attack
