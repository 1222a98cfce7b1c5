#include "rovernav/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "rovernav/rng.hpp"

namespace rovernav {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("io: cannot open for writing: " + path);
    return out;
}

// snprintf keeps float formatting byte-stable across runs.
std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

}  // namespace

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::reached: return "reached";
        case Outcome::stuck: return "stuck";
        case Outcome::timeout: return "timeout";
    }
    return "unknown";
}

const char* mode_name(PlanMode m) {
    return m == PlanMode::baseline ? "baseline" : "replan";
}

void write_grid_csv(const std::string& path, const Grid<double>& grid,
                    const Grid<uint8_t>* mask) {
    std::ofstream out = open_out(path);
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (c) out << ',';
            if (mask && !mask->at(r, c))
                out << "nan";
            else
                out << fmt("%.6g", grid.at(r, c));
        }
        out << '\n';
    }
}

void write_local_costmap_csv(const std::string& path, const LocalCostMap& lcm) {
    write_grid_csv(path, lcm.cost, &lcm.observed);
}

void write_global_costmap_csv(const std::string& stem, const GlobalCostMap& g) {
    write_grid_csv(stem + "_cost.csv", g.cost);
    std::ofstream out = open_out(stem + "_prov.csv");
    for (int r = 0; r < g.provenance.rows(); ++r) {
        for (int c = 0; c < g.provenance.cols(); ++c) {
            if (c) out << ',';
            switch (g.provenance.at(r, c)) {
                case CellProvenance::prior: out << 'P'; break;
                case CellProvenance::observed: out << 'O'; break;
                case CellProvenance::interpolated: out << 'I'; break;
            }
        }
        out << '\n';
    }
}

void write_topdown_ppm(const std::string& path, const TopDownImage& img) {
    std::ofstream out = open_out(path, true);
    out << "P6\n" << img.color.cols() << ' ' << img.color.rows() << "\n255\n";
    for (int r = 0; r < img.color.rows(); ++r) {
        for (int c = 0; c < img.color.cols(); ++c) {
            const Rgb& px = img.color.at(r, c);
            const unsigned char rgb[3] = {
                static_cast<unsigned char>(std::lround(px.r * 255.0)),
                static_cast<unsigned char>(std::lround(px.g * 255.0)),
                static_cast<unsigned char>(std::lround(px.b * 255.0))};
            out.write(reinterpret_cast<const char*>(rgb), 3);
        }
    }
    std::ofstream side = open_out(path + ".georef");
    side << "origin_x_m: " << fmt("%.6f", img.frame.origin.x) << '\n'
         << "origin_y_m: " << fmt("%.6f", img.frame.origin.y) << '\n'
         << "m_per_pixel: " << fmt("%.6f", img.frame.res) << '\n';
}

void write_cluster_ppm(const std::string& path, const ClusterMap& cm) {
    std::ofstream out = open_out(path, true);
    out << "P6\n" << cm.labels.cols() << ' ' << cm.labels.rows() << "\n255\n";
    for (int r = 0; r < cm.labels.rows(); ++r) {
        for (int c = 0; c < cm.labels.cols(); ++c) {
            const uint64_t h = splitmix64(static_cast<uint64_t>(cm.labels.at(r, c)) + 1);
            const unsigned char rgb[3] = {static_cast<unsigned char>(h & 0xFF),
                                          static_cast<unsigned char>((h >> 8) & 0xFF),
                                          static_cast<unsigned char>((h >> 16) & 0xFF)};
            out.write(reinterpret_cast<const char*>(rgb), 3);
        }
    }
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
    std::ofstream out = open_out(path);
    out << "t,x,y,theta,cycle_id,step_cost,collision_flag\n";
    for (const TraceRow& row : trace.rows) {
        out << fmt("%.6f", row.t) << ',' << fmt("%.6f", row.x) << ',' << fmt("%.6f", row.y)
            << ',' << fmt("%.6f", row.theta) << ',' << row.cycle_id << ','
            << fmt("%.6f", row.step_cost) << ',' << row.collision_flag << '\n';
    }
}

void write_metrics(const std::string& path, const RunMetrics& m) {
    std::ofstream out = open_out(path);
    char seed_buf[32];
    std::snprintf(seed_buf, sizeof(seed_buf), "%" PRIu64, m.seed);
    out << "outcome: " << outcome_name(m.outcome) << '\n'
        << "seed: " << seed_buf << '\n'
        << "total_path_cost: " << fmt("%.6f", m.total_path_cost) << '\n'
        << "n_collisions: " << m.n_collisions << '\n'
        << "total_time_s: " << fmt("%.6f", m.total_time_s) << '\n'
        << "total_distance_m: " << fmt("%.6f", m.total_distance_m) << '\n'
        << "n_blocking_contacts: " << m.n_blocking_contacts << '\n'
        << "n_replan_failures: " << m.n_replan_failures << '\n';
}

}  // namespace rovernav
