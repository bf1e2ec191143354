#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rfk/types.hpp"

namespace rfk {

/// Decodes PNG or JPEG (sniffed from the magic bytes) to 8-bit RGB.
/// Gray, palette, alpha and 16-bit PNGs are converted. Throws kImageDecodeError.
Image decode_image(std::span<const std::uint8_t> bytes);
Image read_image(const std::filesystem::path& path);

/// Lossless PNG encoding. Output bytes depend only on the pixels.
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const Image& image, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace rfk
