#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lingmine/jsonl.hpp"
#include "lingmine/textproc.hpp"

namespace lingmine {

// Document-source contract: anything that can be opened into a stream of raw
// documents. The miner only sees documents, so an HTTP or database source can
// be added without touching it.
class DocumentSource {
 public:
  virtual ~DocumentSource() = default;
  virtual std::vector<RawDocument> read() = 0;
};

// The bundled source: a JSONL corpus file on disk.
class FileSource final : public DocumentSource {
 public:
  FileSource(std::string path, Lang lang) : path_(std::move(path)), lang_(lang) {}

  std::vector<RawDocument> read() override { return io::read_raw_corpus(path_, lang_); }

 private:
  std::string path_;
  Lang lang_;
};

inline std::unique_ptr<DocumentSource> open_file_source(const std::string& path, Lang lang) {
  return std::make_unique<FileSource>(path, lang);
}

}  // namespace lingmine
