// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/buffer/messages.h"

#include "json.hpp"

namespace sentiflow::buffer {

using nlohmann::json;

std::string EncodeInput(const InputMessage& m) {
  return json{{"post_id", m.post_id},
              {"lang", m.lang},
              {"text", m.text},
              {"created_at", m.created_at}}
      .dump();
}

absl::StatusOr<InputMessage> DecodeInput(std::string_view bytes) {
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("input message is not a JSON object");
  }
  try {
    InputMessage m;
    j.at("post_id").get_to(m.post_id);
    j.at("lang").get_to(m.lang);
    j.at("text").get_to(m.text);
    j.at("created_at").get_to(m.created_at);
    return m;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(std::string("bad input message: ") + e.what());
  }
}

std::string EncodeOutput(const OutputMessage& m) {
  return json{{"post_id", m.post_id},
              {"created_at", m.created_at},
              {"polarity", m.polarity},
              {"classified_at", m.classified_at},
              {"flagged", m.flagged}}
      .dump();
}

absl::StatusOr<OutputMessage> DecodeOutput(std::string_view bytes) {
  json j = json::parse(bytes, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("output message is not a JSON object");
  }
  try {
    OutputMessage m;
    j.at("post_id").get_to(m.post_id);
    j.at("created_at").get_to(m.created_at);
    j.at("polarity").get_to(m.polarity);
    j.at("classified_at").get_to(m.classified_at);
    m.flagged = j.value("flagged", false);
    return m;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(std::string("bad output message: ") + e.what());
  }
}

}  // namespace sentiflow::buffer
