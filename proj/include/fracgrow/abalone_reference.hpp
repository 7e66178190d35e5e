#pragma once

#include <array>
#include <cstddef>

// Published abalone length table: 24 monthly rows, one column per fractional
// order, and the monthly growth rates used to build it. The rate listed for a
// month is the rate of the interval ending at that month.
namespace fracgrow::abalone {

inline constexpr double initial_length = 0.5322;
inline constexpr double initial_rate = 0.04305;

inline constexpr std::array<double, 6> orders{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

// Months 2..24.
inline constexpr std::array<double, 23> eta_column{
    0.4936, 0.4724, 0.4521, 0.4326, 0.4239, 0.3962, 0.0380, 0.3628,
    0.3472, 0.3322, 0.3179, 0.3043, 0.2911, 0.2786, 0.2666, 0.2551,
    0.2443, 0.2336, 0.2236, 0.2140, 0.2047, 0.1960, 0.1875};

// The month-8 rate as printed; the neighbouring rates suggest 0.3800.
inline constexpr int suspect_month = 8;
inline constexpr double suspect_month_alternative = 0.3800;

inline constexpr std::array<std::array<double, 6>, 24> lengths{{
    {0.5322, 0.5322, 0.5322, 0.5322, 0.5322, 0.5322},
    {0.7370, 0.7794, 0.8119, 0.8366, 0.8550, 0.8687},
    {1.3924, 1.4726, 1.5341, 1.5805, 1.6154, 1.6413},
    {1.9934, 2.1082, 2.1962, 2.2627, 2.3126, 2.3496},
    {2.5435, 2.6900, 2.8023, 2.8872, 2.9508, 2.9981},
    {3.0768, 3.2540, 3.3898, 3.4925, 3.5694, 3.6267},
    {3.5397, 3.7436, 3.8998, 4.0179, 4.1065, 4.1723},
    {3.9611, 4.1892, 4.3641, 4.4963, 4.5954, 4.6691},
    {4.3558, 4.6067, 4.7989, 4.9444, 5.0533, 5.1344},
    {4.7240, 4.9960, 5.2045, 5.3622, 5.4804, 5.5683},
    {5.0643, 5.3559, 5.5794, 5.7485, 5.8751, 5.9694},
    {5.3797, 5.6895, 5.9269, 6.1065, 6.2410, 6.3412},
    {5.6726, 5.9993, 6.2497, 6.4390, 6.5809, 6.6865},
    {5.9436, 6.2859, 6.5482, 6.7467, 6.8953, 7.0059},
    {6.1961, 6.5529, 6.8264, 7.0332, 7.1882, 7.3035},
    {6.4308, 6.8011, 7.0849, 7.2996, 7.4604, 7.5801},
    {6.6491, 7.0321, 7.3255, 7.5475, 7.7138, 7.8375},
    {6.8540, 7.2487, 7.5512, 7.7800, 7.9515, 8.0790},
    {7.0429, 7.4485, 7.7593, 7.9944, 8.1705, 8.3016},
    {7.2206, 7.6365, 7.9551, 8.1962, 8.3768, 8.5111},
    {7.3866, 7.8120, 8.1380, 8.3846, 8.5693, 8.7068},
    {7.5410, 7.9753, 8.3081, 8.5599, 8.7485, 8.8888},
    {7.6869, 8.1297, 8.4689, 8.7255, 8.9178, 9.0608},
    {7.8225, 8.2730, 8.6182, 8.8793, 9.0750, 9.2205},
}};

// Row-major copy of `lengths`, matching PredictionGrid::values.
inline constexpr std::array<double, 24 * 6> flat_lengths() {
    std::array<double, 24 * 6> out{};
    for (std::size_t m = 0; m < 24; ++m)
        for (std::size_t j = 0; j < 6; ++j)
            out[m * 6 + j] = lengths[m][j];
    return out;
}

}  // namespace fracgrow::abalone
