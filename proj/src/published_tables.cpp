#include <array>
#include <cmath>

#include "lmindep/mc.hpp"

namespace lmindep::mc {

namespace {

// Rows: n = 64 (B = 6, 10, 15) then n = 128 (B = 7, 12, 20), each with 5% and 10% lines.
// Columns: theta BAR TUK PAR, gamma BAR TUK PAR.
using Panel = std::array<std::array<double, 6>, 12>;

constexpr Panel kTable1a{{
    {8.68, 8.00, 8.44, 8.16, 7.58, 8.38},       {13.46, 12.14, 12.88, 12.62, 11.76, 12.10},
    {7.28, 6.94, 7.40, 6.42, 6.00, 7.00},       {12.34, 11.50, 12.04, 11.40, 11.00, 11.14},
    {6.86, 6.66, 6.80, 5.80, 5.44, 6.04},       {11.84, 11.30, 11.50, 10.40, 10.16, 10.80},
    {7.78, 7.16, 7.58, 7.44, 6.96, 7.70},       {12.30, 11.68, 11.94, 11.68, 11.22, 11.28},
    {7.28, 7.08, 7.16, 6.52, 5.88, 6.40},       {11.40, 11.12, 11.20, 10.84, 10.18, 10.46},
    {6.82, 6.70, 6.98, 5.86, 5.50, 5.80},       {11.38, 11.04, 11.26, 10.30, 9.88, 10.24},
}};

constexpr Panel kTable1b{{
    {11.22, 10.64, 9.98, 7.36, 7.02, 7.22},     {15.82, 14.92, 14.40, 11.70, 10.82, 11.06},
    {11.86, 11.66, 10.86, 7.12, 6.72, 6.94},    {17.26, 17.02, 15.46, 11.68, 11.44, 11.50},
    {12.66, 12.68, 11.78, 6.68, 6.72, 6.82},    {18.36, 17.88, 17.28, 11.80, 11.28, 11.52},
    {11.40, 10.80, 10.50, 6.64, 6.48, 6.60},    {16.18, 15.48, 14.56, 10.90, 10.40, 10.34},
    {12.50, 12.00, 11.48, 6.36, 6.38, 6.20},    {17.30, 17.14, 16.04, 10.34, 10.44, 10.48},
    {13.52, 13.22, 12.48, 5.38, 5.42, 5.98},    {19.24, 18.96, 17.58, 10.22, 10.26, 10.34},
}};

constexpr Panel kTable2a{{
    {84.00, 81.38, 84.44, 82.72, 79.28, 83.02}, {89.56, 87.22, 89.78, 88.62, 86.22, 89.00},
    {79.04, 73.04, 79.34, 77.06, 72.30, 77.32}, {85.62, 82.26, 86.08, 84.66, 80.38, 85.52},
    {72.46, 65.80, 72.58, 70.20, 63.64, 71.80}, {80.44, 75.94, 81.56, 80.00, 74.04, 79.66},
    {99.14, 98.56, 99.28, 98.90, 98.38, 98.96}, {99.58, 99.36, 99.58, 99.54, 99.20, 99.56},
    {98.00, 96.80, 98.06, 97.94, 96.60, 97.84}, {99.00, 98.40, 99.16, 98.90, 98.44, 99.04},
    {95.90, 93.12, 96.12, 95.50, 92.70, 95.70}, {98.00, 96.58, 98.02, 97.60, 96.22, 97.80},
}};

constexpr Panel kTable2b{{
    {82.06, 77.92, 83.28, 85.50, 81.66, 86.48}, {89.02, 86.46, 90.40, 90.90, 88.76, 91.52},
    {73.92, 68.04, 74.48, 78.90, 72.94, 79.24}, {83.20, 79.34, 84.40, 86.16, 81.64, 86.60},
    {65.72, 58.20, 66.54, 71.44, 63.02, 71.64}, {76.70, 71.10, 78.34, 80.60, 74.80, 81.14},
    {98.84, 97.80, 99.02, 99.42, 99.10, 99.52}, {99.50, 99.24, 99.66, 99.76, 99.60, 99.76},
    {97.20, 95.20, 97.24, 98.72, 97.62, 98.86}, {98.70, 97.90, 98.96, 99.44, 98.94, 99.44},
    {93.50, 90.02, 93.74, 96.96, 94.42, 97.02}, {96.98, 94.86, 97.38, 98.38, 97.12, 98.66},
}};

constexpr Panel kTable3a{{
    {61.48, 63.48, 57.98, 58.28, 59.88, 55.26}, {73.80, 73.98, 70.12, 70.68, 71.54, 67.90},
    {68.04, 66.98, 65.06, 64.22, 64.08, 61.58}, {78.56, 78.48, 76.42, 75.12, 74.80, 73.58},
    {71.40, 69.62, 68.16, 66.56, 66.04, 65.20}, {81.24, 80.76, 79.10, 79.00, 77.32, 75.52},
    {95.58, 95.36, 92.76, 93.60, 93.68, 91.48}, {97.98, 98.08, 96.34, 97.12, 97.14, 95.38},
    {98.52, 98.02, 96.94, 98.02, 97.32, 95.42}, {99.52, 99.32, 98.54, 99.20, 98.92, 98.04},
    {99.36, 99.30, 98.90, 98.82, 98.98, 98.38}, {99.80, 99.82, 99.74, 99.64, 99.66, 99.42},
}};

constexpr Panel kTable3b{{
    {78.10, 76.14, 76.40, 77.82, 75.46, 75.12}, {86.44, 84.76, 84.54, 85.98, 84.72, 83.86},
    {76.50, 72.84, 75.60, 77.58, 73.60, 75.92}, {86.80, 84.08, 85.20, 86.78, 84.76, 85.58},
    {75.62, 71.54, 73.44, 76.80, 72.06, 74.22}, {86.98, 83.38, 84.22, 87.18, 84.00, 85.28},
    {97.76, 97.52, 100.0, 99.20, 98.94, 98.64}, {99.46, 99.40, 99.16, 99.68, 99.60, 99.48},
    {98.44, 97.34, 100.0, 99.50, 99.12, 99.04}, {99.54, 99.24, 99.34, 99.80, 99.72, 99.68},
    {98.48, 98.06, 100.0, 99.68, 99.58, 99.44}, {99.62, 99.48, 99.40, 99.84, 99.84, 99.78},
}};

constexpr Panel kTable4a{{
    {17.98, 16.64, 6.74, 13.34, 11.62, 4.28},   {31.48, 27.30, 13.26, 25.80, 22.62, 9.48},
    {37.06, 42.36, 27.24, 33.22, 40.26, 22.10}, {51.16, 57.38, 41.38, 47.60, 53.58, 37.88},
    {42.30, 46.98, 43.32, 37.90, 44.36, 41.28}, {55.54, 60.26, 58.16, 53.10, 57.28, 54.12},
    {71.62, 70.66, 22.38, 65.22, 65.08, 13.44}, {83.18, 83.00, 37.24, 80.44, 80.70, 28.02},
    {85.76, 89.52, 82.76, 84.68, 89.16, 80.72}, {92.78, 94.44, 91.50, 91.52, 94.10, 90.40},
    {86.80, 88.84, 89.66, 85.00, 87.22, 89.04}, {92.60, 93.50, 94.36, 91.92, 93.12, 93.80},
}};

constexpr Panel kTable4b{{
    {17.38, 14.86, 6.46, 13.86, 11.08, 3.52},   {32.18, 28.62, 14.04, 28.10, 23.16, 8.10},
    {33.10, 38.64, 23.14, 33.44, 40.12, 22.60}, {50.18, 55.18, 40.86, 49.60, 55.48, 37.98},
    {38.20, 42.52, 38.90, 39.38, 44.38, 40.46}, {52.96, 56.98, 55.48, 54.60, 60.26, 56.56},
    {63.60, 64.06, 22.40, 70.72, 69.52, 13.00}, {80.98, 80.50, 39.56, 84.36, 83.54, 28.66},
    {81.02, 85.44, 77.04, 86.74, 90.16, 84.06}, {90.24, 92.64, 88.92, 93.02, 94.70, 91.56},
    {81.54, 83.86, 85.44, 87.58, 89.08, 90.18}, {89.80, 91.46, 92.44, 92.90, 93.88, 94.52},
}};

const Panel* panel_for(TableLayout layout, sim::ModelKind model) {
    const bool a = model == sim::ModelKind::Model7;
    if (!a && model != sim::ModelKind::Model8) return nullptr;
    switch (layout) {
        case TableLayout::Table1: return a ? &kTable1a : &kTable1b;
        case TableLayout::Table2: return a ? &kTable2a : &kTable2b;
        case TableLayout::Table3: return a ? &kTable3a : &kTable3b;
        case TableLayout::Table4: return a ? &kTable4a : &kTable4b;
    }
    return nullptr;
}

int bandwidth_row(std::size_t n, std::size_t bandwidth) {
    constexpr std::array<std::size_t, 3> b64{6, 10, 15};
    constexpr std::array<std::size_t, 3> b128{7, 12, 20};
    const auto& bs = n == 64 ? b64 : b128;
    if (n != 64 && n != 128) return -1;
    for (int i = 0; i < 3; ++i)
        if (bs[static_cast<std::size_t>(i)] == bandwidth) return i + (n == 128 ? 3 : 0);
    return -1;
}

}  // namespace

std::optional<double> published_value(TableLayout layout, sim::ModelKind model, std::size_t n, const CellKey& key) {
    const Panel* panel = panel_for(layout, model);
    if (!panel) return std::nullopt;
    const int brow = bandwidth_row(n, key.bandwidth);
    if (brow < 0) return std::nullopt;
    int lrow;
    if (std::abs(key.level - 0.05) < 1e-12) lrow = 0;
    else if (std::abs(key.level - 0.10) < 1e-12) lrow = 1;
    else return std::nullopt;
    int col;
    switch (key.statistic) {
        case test::StatisticKind::ParametricWhittle: col = 0; break;
        case test::StatisticKind::FarWhittle: col = 3; break;
        default: return std::nullopt;
    }
    col += static_cast<int>(key.kernel);
    return (*panel)[static_cast<std::size_t>(2 * brow + lrow)][static_cast<std::size_t>(col)];
}

}  // namespace lmindep::mc
