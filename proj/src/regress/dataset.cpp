#include "aquafuzz/regress/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "aquafuzz/core/rng.hpp"

namespace aquafuzz::regress {

TrainingSet TrainingSet::merged() const {
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    TrainingSet out;
    auto key_of = [](const netbus::FeatureVector& x, double y) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::size_t w = 0; w < netbus::FeatureVector::kWords; ++w) h = hash_mix(h, x.word(w));
        std::uint64_t ybits;
        std::memcpy(&ybits, &y, sizeof ybits);
        return hash_mix(h, ybits);
    };
    for (std::size_t i = 0; i < size(); ++i) {
        std::uint64_t key = key_of(X_[i], y_[i]);
        auto& slots = buckets[key];
        bool found = false;
        for (std::size_t slot : slots) {
            if (out.X_[slot] == X_[i] && out.y_[slot] == y_[i]) {
                out.w_[slot] += w_[i];
                found = true;
                break;
            }
        }
        if (!found) {
            slots.push_back(out.size());
            out.append(X_[i], y_[i], w_[i]);
        }
    }
    return out;
}

void TrainingSet::save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write training set: " + path);
    f << "# aquafuzz-trainingset v1\n";
    char buf[64];
    for (std::size_t i = 0; i < size(); ++i) {
        f << X_[i].to_hex() << ',';
        std::snprintf(buf, sizeof buf, "%.17g", y_[i]);
        f << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", w_[i]);
        f << buf << "\n";
    }
}

TrainingSet TrainingSet::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open training set: " + path);
    std::string line;
    if (!std::getline(f, line) || line != "# aquafuzz-trainingset v1")
        throw std::runtime_error("training set: bad header in " + path);

    TrainingSet out;
    int line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("training set: bad record at line " + std::to_string(line_no));
        netbus::FeatureVector x = netbus::FeatureVector::from_hex(line.substr(0, c1));
        double y = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        double w = std::stod(line.substr(c2 + 1));
        out.append(std::move(x), y, w);
    }
    return out;
}

} // namespace aquafuzz::regress
