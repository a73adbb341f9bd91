#include <cmath>

#include "pentamap/polygon.hpp"

namespace pentamap {

namespace {

SymmetricOctagon<double> renorm_with_labeling(const Polygon<double>& image, int shift,
                                              bool reversed) {
    Polygon<double> relabeled;
    relabeled.vertices.resize(8);
    for (int i = 0; i < 8; ++i) {
        int src = reversed ? (shift + 16 - i) % 8 : (shift + i) % 8;
        relabeled.vertices[static_cast<std::size_t>(i)] = image[static_cast<std::size_t>(src)];
    }
    return renormalize_symmetric_octagon(relabeled);
}

}  // namespace

SymmetricOctagon<double> t3_geometric(const SymmetricOctagon<double>& o, int shift,
                                      bool reversed) {
    Polygon<double> image = deep_diagonal(octagon_polygon(o), 3);
    return renorm_with_labeling(image, shift, reversed);
}

Calibration calibrate_labeling(int panel_size, std::uint64_t rng_seed, double tol) {
    detail::Rng rng(rng_seed);
    std::vector<SymmetricOctagon<double>> panel;
    while (static_cast<int>(panel.size()) < panel_size) {
        double x = rng.real(-2.0, 2.0);
        double y = rng.real(-2.0, 2.0);
        SymmetricOctagon<double> o(x, y);
        if (is_degenerate(o, 1e-3)) continue;
        if (std::fabs(x - y) < 1e-3 || std::fabs(x + y) < 1e-3 ||
            std::fabs(x + y - 1) < 1e-3)
            continue;
        try {
            auto c = map_coefficients(o);
            if (std::fabs(c.a_denominator) < 1e-3) continue;
            auto img = t3(o);
            if (std::fabs(img.x) > 1e3 || std::fabs(img.y) > 1e3) continue;
        } catch (const PoleOfMap&) {
            continue;
        }
        panel.push_back(o);
    }

    for (bool reversed : {false, true}) {
        for (int shift = 0; shift < 8; ++shift) {
            double worst = 0;
            bool all_ok = true;
            for (const auto& o : panel) {
                SymmetricOctagon<double> expect = t3(o);
                SymmetricOctagon<double> got;
                try {
                    got = t3_geometric(o, shift, reversed);
                } catch (const Error&) {
                    all_ok = false;
                    break;
                }
                double err = std::max(std::fabs(got.x - expect.x),
                                      std::fabs(got.y - expect.y));
                worst = std::max(worst, err);
                if (err > tol) {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok) {
                Calibration cal;
                cal.shift = shift;
                cal.reversed = reversed;
                cal.max_error = worst;
                if (shift != kCalibratedShift || reversed != kCalibratedReversed)
                    throw CalibrationFailed(
                        "labeling calibration disagrees with the frozen constants");
                return cal;
            }
        }
    }
    throw CalibrationFailed("no cyclic relabeling matches the closed form on the panel");
}

}  // namespace pentamap
