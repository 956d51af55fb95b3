#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flatreach/flatnorm.hpp"

namespace flatreach {

namespace {

// Directions along pixel edges, ordered so that (d + 1) % 4 is a left turn.
enum Dir : int { E = 0, N = 1, W = 2, S = 3 };
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

}  // namespace

// Traces the boundary of the pixel region along pixel edges. Every directed
// edge keeps the region on its left, so outer contours come out
// counterclockwise and holes clockwise. At checkerboard corners the walk
// turns left, which keeps diagonally touching pixels in separate components
// (4-connected foreground).
std::vector<ClosedCurve> extract_boundary(const GridMask& mask, int smoothing_passes) {
  const int w = mask.width;
  const int h = mask.height;
  const int cw = w + 1;  // corner lattice width
  auto corner_id = [cw](int x, int y) { return std::size_t(y) * cw + x; };

  std::vector<std::uint8_t> edges(std::size_t(cw) * (h + 1), 0);
  auto add_edge = [&](int x, int y, int dir) {
    edges[corner_id(x, y)] |= std::uint8_t(1u << dir);
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      if (y == 0 || !mask.at(x, y - 1)) add_edge(x, y, E);
      if (x == w - 1 || !mask.at(x + 1, y)) add_edge(x + 1, y, N);
      if (y == h - 1 || !mask.at(x, y + 1)) add_edge(x + 1, y + 1, W);
      if (x == 0 || !mask.at(x - 1, y)) add_edge(x, y + 1, S);
    }
  }

  // The incoming->outgoing pairing at each corner is fixed by the original
  // edge set (prefer left turn), so loops through shared corners never mix.
  const std::vector<std::uint8_t> original = edges;
  auto next_dir = [&](int x, int y, int dir) {
    const std::uint8_t out = original[corner_id(x, y)];
    const int candidates[3] = {(dir + 1) % 4, dir, (dir + 3) % 4};
    for (int c : candidates)
      if (out & (1u << c)) return c;
    return -1;
  };

  std::vector<ClosedCurve> curves;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    for (int start_dir = 0; start_dir < 4; ++start_dir) {
      if (!(edges[start] & (1u << start_dir))) continue;

      const int sx = int(start % cw);
      const int sy = int(start / cw);
      std::vector<Point> pts;
      int x = sx, y = sy, dir = start_dir;
      do {
        pts.push_back({x * mask.spacing, y * mask.spacing});
        edges[corner_id(x, y)] &= std::uint8_t(~(1u << dir));
        x += kDx[dir];
        y += kDy[dir];
        dir = next_dir(x, y, dir);
        if (dir < 0) throw std::logic_error("boundary trace left the edge set");
      } while (x != sx || y != sy || dir != start_dir);

      ClosedCurve c = make_closed_curve(std::move(pts));
      if (smoothing_passes > 0) {
        c = smooth_closed_curve(c, smoothing_passes);
        c = make_closed_curve(std::move(c.vertices));
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

}  // namespace flatreach
