#pragma once

#include <string>
#include <vector>

#include "tensvd/tensor.hpp"

namespace tensvd {

// Load an 8-bit PNG or binary PPM (P6) as a (height, width, 3) tensor with
// values in [0,1]. Grayscale images are expanded to three channels and an
// alpha channel is dropped; both add a note to `warnings` when given.
DenseTensor load_image(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Write a (height, width, 3) tensor as PNG or PPM depending on the file
// extension. Values are clamped to [0,1] and quantized to 8 bits.
void save_image(const DenseTensor& t, const std::string& path);

// Load equally-sized frames from a directory (glob `pattern`, lexicographic
// filename order) into a (frames, height, width, 3) tensor.
DenseTensor load_frames(const std::string& dir, const std::string& pattern = "*.png",
                        std::vector<std::string>* warnings = nullptr);

// Write a (frames, height, width, 3) tensor as numbered PNG frames
// ("<prefix>00000.png", ...) inside `dir`, creating it if needed.
void save_frames(const DenseTensor& t, const std::string& dir,
                 const std::string& prefix = "frame_");

} // namespace tensvd
