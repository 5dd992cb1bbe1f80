#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "photostamp/image.hpp"

namespace photostamp {

enum class ImageFormat { Png, Bmp, Jpeg };

// Sniffs the container from magic bytes. PNG/BMP/JPEG are decodable; only
// PNG and BMP are writable (stamped output must survive bit-exactly).
ImageFormat sniff_format(std::span<const std::uint8_t> bytes);

RgbImage decode_image(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const RgbImage& img);
std::vector<std::uint8_t> encode_bmp(const RgbImage& img);
std::vector<std::uint8_t> encode_jpeg(const RgbImage& img, int quality);
RgbImage decode_jpeg(std::span<const std::uint8_t> bytes);

// File-level API. Loading accepts PNG, BMP and (for verification inputs)
// JPEG. Saving picks the container from the extension: .png or .bmp only;
// .jpg/.jpeg raises LossyFormatRequested.
RgbImage load_image(const std::filesystem::path& path);
void save_image(const RgbImage& img, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace photostamp
