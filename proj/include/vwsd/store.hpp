#pragma once

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vwsd/embedding.hpp"

namespace vwsd {

// Append-only embedding cache. On-disk layout (all integers little-endian):
//   header: "VWSE" magic, u16 format version, u32 dim
//   record: u16 key length, key bytes, u8 modality (0 text, 1 image),
//           u16 model-id length, model-id bytes, dim x f32
// One file holds one dimension; every record must match the header.
// First write wins: re-putting an existing key is a no-op, so any re-read
// returns the first value ever stored for that key.
class EmbeddingStore {
 public:
  static constexpr uint16_t kFormatVersion = 1;

  // Memory-only store (used by fixtures and mock runs without a cache path).
  // dim 0 defers the dimension until the first put.
  static std::shared_ptr<EmbeddingStore> memory(uint32_t dim = 0);

  // Opens an existing file (header dim must match `dim` when nonzero) or
  // arranges to create one. New files materialize on the first put; with
  // dim 0 the first stored vector fixes the dimension.
  static std::shared_ptr<EmbeddingStore> open(const std::filesystem::path& path,
                                              uint32_t dim = 0);

  ~EmbeddingStore();
  EmbeddingStore(const EmbeddingStore&) = delete;
  EmbeddingStore& operator=(const EmbeddingStore&) = delete;

  // 0 until the first vector fixes it.
  uint32_t dim() const { return dim_; }
  size_t size() const;
  bool file_backed() const { return !path_.empty(); }

  bool contains(const std::string& model_id, Modality modality,
                const std::string& key) const;
  std::optional<EmbeddingVector> get(const std::string& model_id, Modality modality,
                                     const std::string& key) const;

  // Returns false (and stores nothing) when the key is already present.
  bool put(const EmbeddingVector& vec);

 private:
  EmbeddingStore() = default;
  void load_file(const std::filesystem::path& path, uint32_t expect_dim);
  void append_record(const EmbeddingVector& vec);

  mutable std::shared_mutex mutex_;
  uint32_t dim_ = 0;
  std::unordered_map<std::string, size_t> index_;  // composite key -> slot
  std::vector<EmbeddingVector> records_;
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
};

}  // namespace vwsd
