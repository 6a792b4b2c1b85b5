#include "dicesim/stats.hpp"

#include <array>

namespace dicesim::stats {
namespace {

// Upper-tail chi-square quantiles for alpha = 0.05, 0.01, 0.001, dof 1..99.
constexpr std::array<std::array<double, 3>, kMaxTabulatedDof> kCritical{{
    {3.841, 6.635, 10.828},
    {5.991, 9.210, 13.816},
    {7.815, 11.345, 16.266},
    {9.488, 13.277, 18.467},
    {11.070, 15.086, 20.515},
    {12.592, 16.812, 22.458},
    {14.067, 18.475, 24.322},
    {15.507, 20.090, 26.124},
    {16.919, 21.666, 27.877},
    {18.307, 23.209, 29.588},
    {19.675, 24.725, 31.264},
    {21.026, 26.217, 32.909},
    {22.362, 27.688, 34.528},
    {23.685, 29.141, 36.123},
    {24.996, 30.578, 37.697},
    {26.296, 32.000, 39.252},
    {27.587, 33.409, 40.790},
    {28.869, 34.805, 42.312},
    {30.144, 36.191, 43.820},
    {31.410, 37.566, 45.315},
    {32.671, 38.932, 46.797},
    {33.924, 40.289, 48.268},
    {35.172, 41.638, 49.728},
    {36.415, 42.980, 51.179},
    {37.652, 44.314, 52.620},
    {38.885, 45.642, 54.052},
    {40.113, 46.963, 55.476},
    {41.337, 48.278, 56.892},
    {42.557, 49.588, 58.301},
    {43.773, 50.892, 59.703},
    {44.985, 52.191, 61.098},
    {46.194, 53.486, 62.487},
    {47.400, 54.776, 63.870},
    {48.602, 56.061, 65.247},
    {49.802, 57.342, 66.619},
    {50.998, 58.619, 67.985},
    {52.192, 59.893, 69.346},
    {53.384, 61.162, 70.703},
    {54.572, 62.428, 72.055},
    {55.758, 63.691, 73.402},
    {56.942, 64.950, 74.745},
    {58.124, 66.206, 76.084},
    {59.304, 67.459, 77.419},
    {60.481, 68.710, 78.750},
    {61.656, 69.957, 80.077},
    {62.830, 71.201, 81.400},
    {64.001, 72.443, 82.720},
    {65.171, 73.683, 84.037},
    {66.339, 74.919, 85.351},
    {67.505, 76.154, 86.661},
    {68.669, 77.386, 87.968},
    {69.832, 78.616, 89.272},
    {70.993, 79.843, 90.573},
    {72.153, 81.069, 91.872},
    {73.311, 82.292, 93.168},
    {74.468, 83.513, 94.461},
    {75.624, 84.733, 95.751},
    {76.778, 85.950, 97.039},
    {77.931, 87.166, 98.324},
    {79.082, 88.379, 99.607},
    {80.232, 89.591, 100.888},
    {81.381, 90.802, 102.166},
    {82.529, 92.010, 103.442},
    {83.675, 93.217, 104.716},
    {84.821, 94.422, 105.988},
    {85.965, 95.626, 107.258},
    {87.108, 96.828, 108.526},
    {88.250, 98.028, 109.791},
    {89.391, 99.228, 111.055},
    {90.531, 100.425, 112.317},
    {91.670, 101.621, 113.577},
    {92.808, 102.816, 114.835},
    {93.945, 104.010, 116.092},
    {95.081, 105.202, 117.346},
    {96.217, 106.393, 118.599},
    {97.351, 107.583, 119.850},
    {98.484, 108.771, 121.100},
    {99.617, 109.958, 122.348},
    {100.749, 111.144, 123.594},
    {101.879, 112.329, 124.839},
    {103.010, 113.512, 126.083},
    {104.139, 114.695, 127.324},
    {105.267, 115.876, 128.565},
    {106.395, 117.057, 129.804},
    {107.522, 118.236, 131.041},
    {108.648, 119.414, 132.277},
    {109.773, 120.591, 133.512},
    {110.898, 121.767, 134.745},
    {112.022, 122.942, 135.978},
    {113.145, 124.116, 137.208},
    {114.268, 125.289, 138.438},
    {115.390, 126.462, 139.666},
    {116.511, 127.633, 140.893},
    {117.632, 128.803, 142.119},
    {118.752, 129.973, 143.344},
    {119.871, 131.141, 144.567},
    {120.990, 132.309, 145.789},
    {122.108, 133.476, 147.010},
    {123.225, 134.642, 148.230},
}};

}  // namespace

double critical_value(std::uint32_t dof, Alpha alpha) {
  if (dof < 1 || dof > kMaxTabulatedDof) {
    throw ValidationError("chi-square table covers 1..99 degrees of freedom, got " + std::to_string(dof));
  }
  return kCritical[dof - 1][static_cast<std::size_t>(alpha)];
}

}  // namespace dicesim::stats
