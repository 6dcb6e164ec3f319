// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bytemend {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed instruction sequence handed to the assembler.
struct StructuralError : Error {
    using Error::Error;
};

/// Deployment stub or metadata structure is inconsistent with the input.
struct AnatomyError : Error {
    using Error::Error;
};

/// A program counter does not name an instruction in the analyzed code.
struct LocationError : Error {
    using Error::Error;
};

/// No execution path from the entry block reaches the requested block.
struct UnreachableError : Error {
    using Error::Error;
};

/// Shadow execution failed (stack underflow along a path).
struct TaintError : Error {
    using Error::Error;
};

/// Patch template text violates the token grammar or label pairing.
struct TemplateError : Error {
    using Error::Error;
};

/// Template references context (bounds, storage key) that was not supplied.
struct ContextError : Error {
    using Error::Error;
};

/// Patch anchored in an unreachable block; refusing without --force.
struct SafetyError : Error {
    using Error::Error;
};

/// Jump-target fixup failed to converge.
struct RelocationError : Error {
    using Error::Error;
};

/// Rewritten jump targets do not land on JUMPDEST in the output.
struct ReassemblyError : Error {
    using Error::Error;
};

/// Bug report fails schema or disassembly validation.
struct ReportError : Error {
    using Error::Error;
};

} // namespace bytemend
