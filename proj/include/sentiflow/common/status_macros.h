// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define SENTIFLOW_CONCAT_INNER_(a, b) a##b
#define SENTIFLOW_CONCAT_(a, b) SENTIFLOW_CONCAT_INNER_(a, b)

#define RETURN_IF_ERROR(expr)                   \
  do {                                          \
    ::absl::Status _status = (expr);            \
    if (!_status.ok()) return _status;          \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                           \
  if (!tmp.ok()) return tmp.status();           \
  lhs = std::move(*tmp)

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(SENTIFLOW_CONCAT_(_statusor_, __LINE__), lhs, rexpr)
