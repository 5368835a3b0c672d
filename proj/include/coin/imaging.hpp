#pragma once

#include "coin/hough.hpp"
#include "coin/raster.hpp"

namespace coin {

/// ITU-R BT.601 luma, rounded half away from zero.
GrayImage to_grayscale(const RgbImage& img);

/// Marks pixels whose Euclidean Sobel gradient magnitude is >= threshold.
/// Borders use replicate padding. Throws ImageTooSmall below 3x3.
EdgeMap sobel_edges(const GrayImage& img, double threshold);

/// Largest Sobel magnitude in the image; basis for the auto threshold.
double max_gradient_magnitude(const GrayImage& img);

/// Counterclockwise rotation about the image center ((w-1)/2, (h-1)/2),
/// inverse-mapped with bilinear interpolation. Samples outside the source
/// read as 0. Output dimensions equal the input's.
GrayImage rotate(const GrayImage& img, double angle_degrees);

/// The (2r+1)x(2r+1) bounding square of the circle, with everything outside
/// the circle (or outside the source) set to 0. Throws CircleOutOfBounds if
/// the bounding square misses the image entirely.
GrayImage crop_to_circle(const GrayImage& img, const CircleHypothesis& c);

/// Bilinear resampling (half-pixel-center convention, edges replicated).
GrayImage resize(const GrayImage& img, Index out_w, Index out_h);

}  // namespace coin
