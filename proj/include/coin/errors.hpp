#pragma once

#include <stdexcept>
#include <string>

namespace coin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// imaging / hough
class ImageTooSmall : public Error { public: using Error::Error; };
class CircleOutOfBounds : public Error { public: using Error::Error; };
class NoCircleFound : public Error { public: using Error::Error; };

// classifier
class BadTopology : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };

// dataset / evaluation
class EmptyDataset : public Error { public: using Error::Error; };
class BadStep : public Error { public: using Error::Error; };
class EmptyDenomination : public Error { public: using Error::Error; };
class ManifestError : public Error { public: using Error::Error; };

// file I/O
class IoError : public Error { public: using Error::Error; };
class FileNotFound : public IoError { public: using IoError::IoError; };
class UnsupportedFormat : public IoError { public: using IoError::IoError; };
class CorruptImage : public IoError { public: using IoError::IoError; };

// model persistence
class ModelFileError : public Error { public: using Error::Error; };

}  // namespace coin
