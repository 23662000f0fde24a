#include "tensvd/media_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <fnmatch.h>
#include <png.h>

namespace fs = std::filesystem;

namespace tensvd {

namespace {

void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings) warnings->push_back(std::move(message));
}

std::string lower_extension(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::uint8_t quantize(double v) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(clamped * 255.0));
}

// Interleaved 8-bit RGB rows <-> (H, W, 3) column-major tensor.
DenseTensor rows_to_tensor(const std::vector<std::uint8_t>& rgb, std::int64_t height,
                           std::int64_t width) {
    DenseTensor t({height, width, 3});
    double* out = t.data();
    for (std::int64_t i = 0; i < height; ++i)
        for (std::int64_t j = 0; j < width; ++j) {
            const std::size_t px = static_cast<std::size_t>((i * width + j) * 3);
            for (std::int64_t c = 0; c < 3; ++c)
                out[i + j * height + c * height * width] =
                    static_cast<double>(rgb[px + static_cast<std::size_t>(c)]) / 255.0;
        }
    return t;
}

std::vector<std::uint8_t> tensor_to_rows(const DenseTensor& t) {
    const std::int64_t height = t.dims()[0];
    const std::int64_t width = t.dims()[1];
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(height * width * 3));
    const double* in = t.data();
    for (std::int64_t i = 0; i < height; ++i)
        for (std::int64_t j = 0; j < width; ++j) {
            const std::size_t px = static_cast<std::size_t>((i * width + j) * 3);
            for (std::int64_t c = 0; c < 3; ++c)
                rgb[px + static_cast<std::size_t>(c)] =
                    quantize(in[i + j * height + c * height * width]);
        }
    return rgb;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

DenseTensor load_png(const std::string& path, std::vector<std::string>* warnings) {
    FileHandle file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw IoError(path + " is not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialization failed");
    }
    std::vector<std::uint8_t> interleaved;
    std::vector<png_bytep> row_pointers;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng failed to decode " + path);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
        warn(warnings, path + ": grayscale image expanded to 3 channels");
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) {
        png_set_strip_alpha(png);
        warn(warnings, path + ": alpha channel dropped");
    }
    png_read_update_info(png, info);

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    if (row_bytes != static_cast<std::size_t>(width) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": unsupported channel layout after expansion");
    }
    interleaved.resize(static_cast<std::size_t>(height) * row_bytes);
    row_pointers.resize(height);
    for (png_uint_32 i = 0; i < height; ++i)
        row_pointers[i] = interleaved.data() + static_cast<std::size_t>(i) * row_bytes;
    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return rows_to_tensor(interleaved, static_cast<std::int64_t>(height),
                          static_cast<std::int64_t>(width));
}

void save_png(const DenseTensor& t, const std::string& path) {
    FileHandle file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot open " + path + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }
    std::vector<std::uint8_t> interleaved = tensor_to_rows(t);
    std::vector<png_bytep> row_pointers;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng failed to encode " + path);
    }

    const std::int64_t height = t.dims()[0];
    const std::int64_t width = t.dims()[1];
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    row_pointers.resize(static_cast<std::size_t>(height));
    for (std::int64_t i = 0; i < height; ++i)
        row_pointers[static_cast<std::size_t>(i)] =
            interleaved.data() + static_cast<std::size_t>(i * width * 3);
    png_write_image(png, row_pointers.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

int ppm_next_value(std::istream& in, const std::string& path) {
    // Skip whitespace and '#' comments between header tokens.
    while (true) {
        const int c = in.peek();
        if (c == EOF) throw IoError(path + ": truncated PPM header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
    }
    int value = 0;
    in >> value;
    if (!in) throw IoError(path + ": malformed PPM header");
    return value;
}

DenseTensor load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '6')
        throw IoError(path + " is not a binary PPM (P6) file");
    const int width = ppm_next_value(in, path);
    const int height = ppm_next_value(in, path);
    const int maxval = ppm_next_value(in, path);
    if (width < 1 || height < 1 || maxval != 255)
        throw IoError(path + ": unsupported PPM header (need 8-bit samples)");
    in.get(); // single whitespace before the raster

    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3);
    in.read(reinterpret_cast<char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
    if (!in) throw IoError(path + ": truncated PPM raster");
    return rows_to_tensor(rgb, height, width);
}

void save_ppm(const DenseTensor& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "P6\n" << t.dims()[1] << " " << t.dims()[0] << "\n255\n";
    const std::vector<std::uint8_t> rgb = tensor_to_rows(t);
    out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
    if (!out) throw IoError("write failed for " + path);
}

} // namespace

DenseTensor load_image(const std::string& path, std::vector<std::string>* warnings) {
    const std::string ext = lower_extension(path);
    if (ext == ".ppm") return load_ppm(path);
    if (ext == ".png") return load_png(path, warnings);
    throw IoError(path + ": unsupported image format (expected .png or .ppm)");
}

void save_image(const DenseTensor& t, const std::string& path) {
    if (t.order() != 3 || t.dims()[2] != 3)
        throw ShapeError("save_image expects a (height, width, 3) tensor");
    const std::string ext = lower_extension(path);
    if (ext == ".ppm") return save_ppm(t, path);
    if (ext == ".png") return save_png(t, path);
    throw IoError(path + ": unsupported image format (expected .png or .ppm)");
}

DenseTensor load_frames(const std::string& dir, const std::string& pattern,
                        std::vector<std::string>* warnings) {
    if (!fs::is_directory(dir)) throw IoError(dir + " is not a directory");
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (fnmatch(pattern.c_str(), name.c_str(), 0) == 0) names.push_back(name);
    }
    if (names.empty())
        throw IoError(dir + ": no frames match pattern '" + pattern + "'");
    std::sort(names.begin(), names.end());

    std::vector<DenseTensor> frames;
    frames.reserve(names.size());
    for (const std::string& name : names) {
        DenseTensor frame = load_image((fs::path(dir) / name).string(), warnings);
        if (!frames.empty() && frame.dims() != frames.front().dims())
            throw IoError(dir + "/" + name + ": frame size differs from " + names.front());
        frames.push_back(std::move(frame));
    }

    const std::int64_t count = static_cast<std::int64_t>(frames.size());
    const std::int64_t height = frames.front().dims()[0];
    const std::int64_t width = frames.front().dims()[1];
    DenseTensor t({count, height, width, 3});
    double* out = t.data();
    for (std::int64_t f = 0; f < count; ++f) {
        const double* in = frames[static_cast<std::size_t>(f)].data();
        for (std::int64_t p = 0; p < height * width * 3; ++p)
            out[f + p * count] = in[p];
    }
    return t;
}

void save_frames(const DenseTensor& t, const std::string& dir, const std::string& prefix) {
    if (t.order() != 4 || t.dims()[3] != 3)
        throw ShapeError("save_frames expects a (frames, height, width, 3) tensor");
    fs::create_directories(dir);
    const std::int64_t count = t.dims()[0];
    const std::int64_t height = t.dims()[1];
    const std::int64_t width = t.dims()[2];
    for (std::int64_t f = 0; f < count; ++f) {
        DenseTensor frame({height, width, 3});
        double* out = frame.data();
        const double* in = t.data();
        for (std::int64_t p = 0; p < height * width * 3; ++p)
            out[p] = in[f + p * count];
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "%05lld.png", static_cast<long long>(f));
        save_image(frame, (fs::path(dir) / (prefix + suffix)).string());
    }
}

} // namespace tensvd
