#include "vwsd/store.hpp"

#include <cstring>
#include <mutex>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'V', 'W', 'S', 'E'};

std::string composite_key(const std::string& model_id, Modality modality,
                          const std::string& key) {
  std::string out;
  out.reserve(model_id.size() + key.size() + 3);
  out += model_id;
  out += '\x1f';
  out += modality == Modality::Text ? 't' : 'i';
  out += '\x1f';
  out += key;
  return out;
}

void put_u16(std::string& out, uint16_t v) {
  out += static_cast<char>(v & 0xff);
  out += static_cast<char>((v >> 8) & 0xff);
}

void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_f32(std::string& out, float f) {
  uint32_t bits = 0;
  std::memcpy(&bits, &f, 4);
  put_u32(out, bits);
}

struct Reader {
  const std::string& data;
  size_t pos = 0;
  const std::string origin;

  void need(size_t n, const char* what) {
    if (pos + n > data.size()) {
      fail(ErrorKind::Parse, origin + ": truncated store (" + what + ")");
    }
  }
  uint16_t u16(const char* what) {
    need(2, what);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos);
    pos += 2;
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
  }
  uint32_t u32(const char* what) {
    need(4, what);
    const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos);
    pos += 4;
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
  }
  uint8_t u8(const char* what) {
    need(1, what);
    return static_cast<uint8_t>(data[pos++]);
  }
  std::string bytes(size_t n, const char* what) {
    need(n, what);
    std::string out = data.substr(pos, n);
    pos += n;
    return out;
  }
};

}  // namespace

std::shared_ptr<EmbeddingStore> EmbeddingStore::memory(uint32_t dim) {
  auto store = std::shared_ptr<EmbeddingStore>(new EmbeddingStore());
  store->dim_ = dim;
  return store;
}

std::shared_ptr<EmbeddingStore> EmbeddingStore::open(const fs::path& path, uint32_t dim) {
  auto store = std::shared_ptr<EmbeddingStore>(new EmbeddingStore());
  store->path_ = path;
  if (fs::exists(path) && fs::file_size(path) > 0) {
    store->load_file(path, dim);
    store->file_ = std::fopen(path.string().c_str(), "ab");
    if (!store->file_) fail(ErrorKind::Parse, "cannot open store for append: " + path.string());
    return store;
  }
  // File materializes on the first put, once the dimension is known.
  store->dim_ = dim;
  return store;
}

EmbeddingStore::~EmbeddingStore() {
  if (file_) std::fclose(file_);
}

void EmbeddingStore::load_file(const fs::path& path, uint32_t expect_dim) {
  const std::string data = read_text_file(path.string());
  Reader reader{data, 0, path.string()};
  const std::string magic = reader.bytes(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    fail(ErrorKind::Parse, path.string() + ": not an embedding store (bad magic)");
  }
  const uint16_t version = reader.u16("version");
  if (version != kFormatVersion) {
    fail(ErrorKind::Parse, path.string() + ": unsupported store version " +
                               std::to_string(version));
  }
  dim_ = reader.u32("dim");
  if (dim_ == 0) fail(ErrorKind::Parse, path.string() + ": store header dim is 0");
  if (expect_dim != 0 && expect_dim != dim_) {
    fail(ErrorKind::Integrity, path.string() + ": store dim " + std::to_string(dim_) +
                                   " does not match expected " + std::to_string(expect_dim));
  }
  while (reader.pos < data.size()) {
    const uint16_t key_len = reader.u16("key length");
    EmbeddingVector vec;
    vec.key = reader.bytes(key_len, "key");
    const uint8_t modality = reader.u8("modality");
    if (modality > 1) {
      fail(ErrorKind::Parse, path.string() + ": bad modality byte " + std::to_string(modality));
    }
    vec.modality = modality == 0 ? Modality::Text : Modality::Image;
    const uint16_t model_len = reader.u16("model-id length");
    vec.model_id = reader.bytes(model_len, "model id");
    vec.values.resize(dim_);
    for (uint32_t i = 0; i < dim_; ++i) {
      const uint32_t bits = reader.u32("value");
      float f = 0;
      std::memcpy(&f, &bits, 4);
      vec.values[i] = f;
    }
    const std::string ck = composite_key(vec.model_id, vec.modality, vec.key);
    if (index_.contains(ck)) {
      fail(ErrorKind::Integrity, path.string() + ": duplicate store key '" + vec.key + "'");
    }
    index_.emplace(ck, records_.size());
    records_.push_back(std::move(vec));
  }
}

size_t EmbeddingStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

bool EmbeddingStore::contains(const std::string& model_id, Modality modality,
                              const std::string& key) const {
  std::shared_lock lock(mutex_);
  return index_.contains(composite_key(model_id, modality, key));
}

std::optional<EmbeddingVector> EmbeddingStore::get(const std::string& model_id,
                                                   Modality modality,
                                                   const std::string& key) const {
  std::shared_lock lock(mutex_);
  const auto it = index_.find(composite_key(model_id, modality, key));
  if (it == index_.end()) return std::nullopt;
  return records_[it->second];
}

bool EmbeddingStore::put(const EmbeddingVector& vec) {
  if (vec.key.size() > UINT16_MAX || vec.model_id.size() > UINT16_MAX) {
    fail(ErrorKind::Validation, "store key or model id longer than 65535 bytes");
  }
  std::unique_lock lock(mutex_);
  if (dim_ == 0) {
    dim_ = vec.dim();
  } else if (vec.dim() != dim_) {
    fail(ErrorKind::Integrity, "store dim " + std::to_string(dim_) +
                                   " does not match vector dim " +
                                   std::to_string(vec.dim()) + " for key '" +
                                   vec.key + "'");
  }
  const std::string ck = composite_key(vec.model_id, vec.modality, vec.key);
  if (index_.contains(ck)) return false;
  index_.emplace(ck, records_.size());
  records_.push_back(vec);
  if (!path_.empty()) {
    if (!file_) {
      if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
      file_ = std::fopen(path_.string().c_str(), "wb");
      if (!file_) fail(ErrorKind::Parse, "cannot create store: " + path_.string());
      std::string header;
      header.append(kMagic, 4);
      put_u16(header, kFormatVersion);
      put_u32(header, dim_);
      std::fwrite(header.data(), 1, header.size(), file_);
    }
    append_record(vec);
  }
  return true;
}

void EmbeddingStore::append_record(const EmbeddingVector& vec) {
  std::string record;
  put_u16(record, static_cast<uint16_t>(vec.key.size()));
  record += vec.key;
  record += static_cast<char>(vec.modality == Modality::Text ? 0 : 1);
  put_u16(record, static_cast<uint16_t>(vec.model_id.size()));
  record += vec.model_id;
  for (float f : vec.values) put_f32(record, f);
  std::fwrite(record.data(), 1, record.size(), file_);
  std::fflush(file_);
}

}  // namespace vwsd
