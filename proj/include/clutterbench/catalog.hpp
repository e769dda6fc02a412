#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clutterbench/errors.hpp"
#include "clutterbench/scene.hpp"

namespace clutterbench {

struct CatalogEntry {
    std::string name;
    Shape shape = Shape::Box;
    double dims[3] = {0.0, 0.0, 0.0};
    Rgb color;

    friend bool operator==(const CatalogEntry& a, const CatalogEntry& b) {
        return a.name == b.name && a.shape == b.shape && a.dims[0] == b.dims[0] &&
               a.dims[1] == b.dims[1] && a.dims[2] == b.dims[2] && a.color == b.color;
    }
};

// The distractor set: 61 primitive stand-ins for the YCB objects.
struct DistractorCatalog {
    std::vector<CatalogEntry> entries;

    static constexpr std::size_t kExpectedSize = 61;

    void require_valid() const {
        if (entries.size() != kExpectedSize)
            throw invalid_input("catalog: expected " + std::to_string(kExpectedSize) +
                                " entries, got " + std::to_string(entries.size()));
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = i + 1; j < entries.size(); ++j)
                if (entries[i].name == entries[j].name)
                    throw invalid_input("catalog: duplicate name: " + entries[i].name);
    }

    const CatalogEntry* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

// Built-in catalog. Dims are meters: box w d h, cylinder r h, sphere r.
inline DistractorCatalog builtin_catalog() {
    DistractorCatalog cat;
    auto box = [&](const char* n, double w, double d, double h, double r, double g, double b) {
        cat.entries.push_back({n, Shape::Box, {w, d, h}, {r, g, b}});
    };
    auto cyl = [&](const char* n, double rad, double h, double r, double g, double b) {
        cat.entries.push_back({n, Shape::Cylinder, {rad, h, 0.0}, {r, g, b}});
    };
    auto sph = [&](const char* n, double rad, double r, double g, double b) {
        cat.entries.push_back({n, Shape::Sphere, {rad, 0.0, 0.0}, {r, g, b}});
    };

    box("cracker_box", 0.16, 0.06, 0.21, 0.78, 0.12, 0.10);
    box("sugar_box", 0.09, 0.04, 0.18, 0.95, 0.85, 0.25);
    box("pudding_box", 0.09, 0.03, 0.11, 0.55, 0.30, 0.15);
    box("gelatin_box", 0.07, 0.03, 0.09, 0.85, 0.20, 0.25);
    box("potted_meat_can", 0.10, 0.06, 0.08, 0.30, 0.45, 0.80);
    box("wood_block", 0.085, 0.085, 0.20, 0.72, 0.55, 0.34);
    box("foam_brick", 0.075, 0.05, 0.05, 0.85, 0.25, 0.20);
    box("colored_wood_block", 0.026, 0.026, 0.026, 0.80, 0.15, 0.15);
    box("rubiks_cube", 0.057, 0.057, 0.057, 0.95, 0.90, 0.20);
    box("dice", 0.016, 0.016, 0.016, 0.96, 0.96, 0.94);
    box("sponge", 0.11, 0.07, 0.017, 0.95, 0.85, 0.30);
    box("banana", 0.19, 0.036, 0.036, 0.93, 0.84, 0.25);
    box("power_drill", 0.18, 0.05, 0.15, 0.15, 0.35, 0.60);
    box("hammer", 0.28, 0.03, 0.03, 0.35, 0.35, 0.38);
    box("adjustable_wrench", 0.155, 0.035, 0.016, 0.60, 0.62, 0.65);
    box("flat_screwdriver", 0.20, 0.02, 0.02, 0.80, 0.45, 0.10);
    box("phillips_screwdriver", 0.20, 0.02, 0.02, 0.20, 0.55, 0.30);
    box("scissors", 0.20, 0.075, 0.01, 0.75, 0.20, 0.25);
    box("padlock", 0.045, 0.025, 0.07, 0.70, 0.65, 0.30);
    box("medium_clamp", 0.09, 0.06, 0.02, 0.15, 0.15, 0.18);
    box("large_clamp", 0.12, 0.08, 0.025, 0.18, 0.18, 0.20);
    box("extra_large_clamp", 0.16, 0.11, 0.03, 0.12, 0.12, 0.15);
    box("fork", 0.18, 0.025, 0.015, 0.75, 0.76, 0.78);
    box("spoon", 0.17, 0.03, 0.015, 0.78, 0.78, 0.80);
    box("knife", 0.21, 0.025, 0.012, 0.70, 0.72, 0.75);
    box("spatula", 0.25, 0.065, 0.02, 0.20, 0.20, 0.22);
    box("toy_airplane", 0.20, 0.18, 0.06, 0.70, 0.20, 0.20);
    box("lego_duplo", 0.032, 0.063, 0.019, 0.90, 0.20, 0.15);

    cyl("master_chef_can", 0.051, 0.140, 0.25, 0.40, 0.75);
    cyl("tomato_soup_can", 0.033, 0.101, 0.80, 0.20, 0.18);
    cyl("tuna_fish_can", 0.0425, 0.033, 0.45, 0.60, 0.80);
    cyl("chips_can", 0.0375, 0.250, 0.85, 0.30, 0.20);
    cyl("cola_can", 0.033, 0.122, 0.82, 0.10, 0.12);
    cyl("mustard_bottle", 0.033, 0.190, 0.90, 0.80, 0.15);
    cyl("bleach_cleanser", 0.035, 0.250, 0.92, 0.93, 0.90);
    cyl("windex_bottle", 0.040, 0.270, 0.30, 0.55, 0.85);
    cyl("pitcher_base", 0.054, 0.235, 0.25, 0.45, 0.85);
    cyl("mug", 0.045, 0.080, 0.80, 0.25, 0.20);
    cyl("bowl", 0.080, 0.055, 0.82, 0.30, 0.25);
    cyl("plate", 0.130, 0.020, 0.85, 0.35, 0.30);
    cyl("skillet", 0.130, 0.040, 0.15, 0.15, 0.17);
    cyl("skillet_lid", 0.130, 0.030, 0.65, 0.67, 0.70);
    cyl("large_marker", 0.009, 0.121, 0.15, 0.15, 0.60);
    cyl("small_marker", 0.008, 0.090, 0.60, 0.15, 0.15);
    cyl("cup_small", 0.030, 0.060, 0.90, 0.55, 0.20);
    cyl("cup_medium", 0.035, 0.070, 0.40, 0.70, 0.30);
    cyl("cup_large", 0.050, 0.090, 0.30, 0.40, 0.80);

    sph("apple", 0.040, 0.85, 0.15, 0.12);
    sph("orange", 0.038, 0.95, 0.55, 0.10);
    sph("lemon", 0.027, 0.95, 0.85, 0.15);
    sph("peach", 0.030, 0.95, 0.65, 0.45);
    sph("pear", 0.033, 0.75, 0.85, 0.30);
    sph("plum", 0.026, 0.45, 0.20, 0.50);
    sph("strawberry", 0.022, 0.85, 0.10, 0.15);
    sph("mini_soccer_ball", 0.070, 0.92, 0.92, 0.92);
    sph("softball", 0.048, 0.93, 0.90, 0.72);
    sph("baseball", 0.0365, 0.94, 0.93, 0.90);
    sph("tennis_ball", 0.0335, 0.80, 0.92, 0.25);
    sph("racquetball", 0.0285, 0.45, 0.75, 0.95);
    sph("golf_ball", 0.0215, 0.95, 0.95, 0.95);
    sph("marble", 0.008, 0.30, 0.60, 0.85);

    cat.require_valid();
    return cat;
}

inline void save_catalog(const DistractorCatalog& cat, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("save_catalog: cannot open " + path);
    out << "clutterbench-catalog v1\n";
    out << "# name shape dims... color_r color_g color_b\n";
    out.precision(17);
    for (const auto& e : cat.entries) {
        out << e.name << " " << to_string(e.shape);
        const int nd = e.shape == Shape::Box ? 3 : (e.shape == Shape::Cylinder ? 2 : 1);
        for (int i = 0; i < nd; ++i) out << " " << e.dims[i];
        out << " " << e.color.r << " " << e.color.g << " " << e.color.b << "\n";
    }
}

inline DistractorCatalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_catalog: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    DistractorCatalog cat;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "clutterbench-catalog v1")
                throw parse_error("load_catalog: bad header", lineno);
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        CatalogEntry e;
        std::string shape;
        if (!(ss >> e.name >> shape)) throw parse_error("load_catalog: malformed entry", lineno);
        try {
            e.shape = shape_from_string(shape);
        } catch (const invalid_input& ex) {
            throw parse_error(std::string("load_catalog: ") + ex.what(), lineno);
        }
        const int nd = e.shape == Shape::Box ? 3 : (e.shape == Shape::Cylinder ? 2 : 1);
        for (int i = 0; i < nd; ++i)
            if (!(ss >> e.dims[i]) || e.dims[i] <= 0.0)
                throw parse_error("load_catalog: bad dims", lineno);
        if (!(ss >> e.color.r >> e.color.g >> e.color.b))
            throw parse_error("load_catalog: bad color", lineno);
        cat.entries.push_back(e);
    }
    if (!header_seen) throw parse_error("load_catalog: missing header", 1);
    cat.require_valid();
    return cat;
}

}  // namespace clutterbench
