#include "snake/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "snake/errors.hpp"

namespace snake {

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

class HeaderReader {
public:
    explicit HeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then parses a decimal integer.
    long next_int() {
        while (pos_ < bytes_.size()) {
            const unsigned char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) throw FormatError("malformed header");
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (v > 1'000'000'000) throw FormatError("malformed header");
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw FormatError("malformed header");
        ++pos_;
    }

    std::size_t pos() const { return pos_; }
    void skip(std::size_t n) { pos_ += n; }

private:
    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

GrayImage decode_pgm(const std::vector<unsigned char>& bytes) {
    HeaderReader hdr(bytes);
    hdr.skip(2);
    const long w = hdr.next_int();
    const long h = hdr.next_int();
    const long maxval = hdr.next_int();
    hdr.single_whitespace();
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) throw FormatError("malformed header");
    if (w * h > (1L << 31)) throw FormatError("malformed header");

    const std::size_t bpp = maxval > 255 ? 2 : 1;
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - hdr.pos() < n * bpp) throw FormatError("unexpected end of data");

    std::vector<double> data(n);
    const unsigned char* p = bytes.data() + hdr.pos();
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned v = bpp == 2 ? (static_cast<unsigned>(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
        if (static_cast<long>(v) > maxval) throw FormatError("sample exceeds maxval");
        data[i] = v;
    }
    return GrayImage(static_cast<int>(w), static_cast<int>(h), std::move(data));
}

struct PngSource {
    const std::vector<unsigned char>* bytes;
    std::size_t pos;
};

void png_read_mem(png_structp png, png_bytep out, png_size_t len) {
    auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
    if (src->bytes->size() - src->pos < len) png_error(png, "unexpected end of data");
    std::memcpy(out, src->bytes->data() + src->pos, len);
    src->pos += len;
}

void png_warn_silent(png_structp, png_const_charp) {}

enum class PngStatus { Ok, Corrupt, NotGray };

// Plain C-style body: setjmp/longjmp must not skip C++ destructors.
PngStatus png_decode(const std::vector<unsigned char>& bytes, std::vector<double>& data, int& width, int& height,
                     char* err, std::size_t err_len) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, png_warn_silent);
    if (!png) return PngStatus::Corrupt;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return PngStatus::Corrupt;
    }
    PngSource src{&bytes, 0};
    png_bytep row = nullptr;
    if (setjmp(png_jmpbuf(png))) {
        std::free(row);
        png_destroy_read_struct(&png, &info, nullptr);
        std::strncpy(err, "unexpected end of data", err_len - 1);
        return PngStatus::Corrupt;
    }
    png_set_read_fn(png, &src, png_read_mem);
    png_read_info(png, info);
    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        return PngStatus::NotGray;
    }
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    row = static_cast<png_bytep>(std::malloc(rowbytes));
    data.resize(static_cast<std::size_t>(w) * h);
    for (png_uint_32 y = 0; y < h; ++y) {
        png_read_row(png, row, nullptr);
        for (png_uint_32 x = 0; x < w; ++x) {
            const unsigned v = depth == 16 ? (static_cast<unsigned>(row[2 * x]) << 8) | row[2 * x + 1] : row[x];
            data[static_cast<std::size_t>(y) * w + x] = v;
        }
    }
    std::free(row);
    png_destroy_read_struct(&png, &info, nullptr);
    width = static_cast<int>(w);
    height = static_cast<int>(h);
    return PngStatus::Ok;
}

GrayImage decode_png(const std::vector<unsigned char>& bytes) {
    std::vector<double> data;
    int w = 0, h = 0;
    char err[128] = {};
    switch (png_decode(bytes, data, w, h, err, sizeof(err))) {
        case PngStatus::Ok: return GrayImage(w, h, std::move(data));
        case PngStatus::NotGray: throw UnsupportedFormat("unsupported format: PNG is not single-channel grayscale");
        case PngStatus::Corrupt: break;
    }
    throw FormatError(err[0] ? err : "corrupt PNG");
}

bool integral_in(const GrayImage& img, double hi) {
    for (double v : img.pixels())
        if (v < 0.0 || v > hi || std::trunc(v) != v) return false;
    return true;
}

void write_all(const std::filesystem::path& path, const std::string& header, const std::vector<unsigned char>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw IoError("no such file: " + path.string());
    const auto bytes = read_all(path);
    static constexpr unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0) return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        if (bytes[1] == '5') return decode_pgm(bytes);
        if (bytes[1] >= '1' && bytes[1] <= '7')
            throw UnsupportedFormat(std::string("unsupported format: netpbm P") + static_cast<char>(bytes[1]));
    }
    if (bytes.size() < 2) throw FormatError("malformed header");
    throw UnsupportedFormat("unsupported format: " + path.string());
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    int maxval = 0;
    if (integral_in(img, 255.0))
        maxval = 255;
    else if (integral_in(img, 65535.0))
        maxval = 65535;
    else
        throw FormatError("intensities are not integers in [0, 65535]; cannot write P5 losslessly");

    std::vector<unsigned char> body;
    body.reserve(img.size() * (maxval > 255 ? 2 : 1));
    for (double v : img.pixels()) {
        const auto s = static_cast<unsigned>(v);
        if (maxval > 255) body.push_back(static_cast<unsigned char>(s >> 8));
        body.push_back(static_cast<unsigned char>(s & 0xFF));
    }
    write_all(path, "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                        std::to_string(maxval) + "\n",
              body);
}

void save_ppm(const std::filesystem::path& path, const RgbImage& img) {
    std::vector<unsigned char> body;
    body.reserve(static_cast<std::size_t>(img.width()) * img.height() * 3);
    for (const Rgb& p : img.pixels()) {
        body.push_back(p.r);
        body.push_back(p.g);
        body.push_back(p.b);
    }
    write_all(path, "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n", body);
}

}  // namespace snake
