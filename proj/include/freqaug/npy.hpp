#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "freqaug/field.hpp"

namespace freqaug {

/// A C-ordered array loaded from an NPY container, widened to double.
struct NpyArray {
    std::string descr;  // dtype as stored, e.g. "<f4"
    std::vector<std::size_t> shape;
    std::vector<double> data;

    std::size_t element_count() const;
};

/// NPY format 1.0/2.0/3.0 with little-endian or byte-sized dtypes:
/// f4 f8 i1 i2 i4 i8 u1 u2 u4 u8 b1. Throws IoError / DataError.
NpyArray read_npy(const std::filesystem::path& path);

enum class NpyType { float32, float64 };

/// Writes an NPY 1.0 file with a 64-byte aligned header.
void write_npy(const std::filesystem::path& path, std::span<const std::size_t> shape, std::span<const double> data,
               NpyType type = NpyType::float32);

/// Shape (C, H, W).
void write_npy(const std::filesystem::path& path, const Field& field, NpyType type = NpyType::float32);

/// Views the trailing three axes as (C, H, W) fields: rank 2 gives one
/// single-channel field, rank 3 one field, rank 4 one field per leading index.
std::vector<Field> npy_to_fields(const NpyArray& array);

}  // namespace freqaug
