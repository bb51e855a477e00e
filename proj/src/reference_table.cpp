#include "twinsieve/reference_table.hpp"

#include <array>

namespace twinsieve {

namespace {

constexpr std::array<ReferenceRow, 12> kRows{{
    {1000, 0.141667, 0.00599, 7793, 79561},
    {5000, 0.122415, 0.00315, 45886, 557521},
    {10000, 0.114097, 0.00325, 97255, 1260991},
    {50000, 0.104126, 0.00105, 556396, 8264959},
    {100000, 0.096421, 0.00095, 1175775, 18409201},
    {500000, 0.086700, 0.00056, 6596231, 115438669},
    {1000000, 0.081143, 0.00041, 13804822, 252427603},
    {3000000, 0.075491, 0.00035, 44214960, 863029303},
    {5000000, 0.073150, 0.00031, 75860671, 1523975911},
    {8000000, 0.070965, 0.00032, 124538861, 2566997821},
    {10000000, 0.070154, 0.00029, 157523559, 3285916171},
    {12000000, 0.069814, 0.00024, 190894477, 4020634603},
}};

}  // namespace

std::span<const ReferenceRow> reference_rows() {
    return {kRows.data(), kRows.size()};
}

const ReferenceRow* find_reference_row(std::uint64_t twin_count) {
    for (const ReferenceRow& row : kRows)
        if (row.twin_count == twin_count) return &row;
    return nullptr;
}

}  // namespace twinsieve
