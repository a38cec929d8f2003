use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};
use serde_json::Value;

/// The JSON document every subcommand prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    /// Wall-clock seconds; only filled in when asked for, so reports stay
    /// byte-for-byte reproducible by default.
    pub timing: Option<f64>,
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

/// Writes every float with 17 significant digits, delegating layout.
struct FixedDigits<F>(F);

macro_rules! delegate {
    ($($name:ident $(($arg:ident: $ty:ty))?;)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)?) -> io::Result<()> {
                self.0.$name(writer $(, $arg)?)
            }
        )*
    };
}

impl<F: Formatter> Formatter for FixedDigits<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    delegate! {
        begin_array;
        end_array;
        begin_array_value(first: bool);
        end_array_value;
        begin_object;
        end_object;
        begin_object_key(first: bool);
        end_object_key;
        begin_object_value;
        end_object_value;
    }
}

/// Serialize with fixed float formatting; `indent = None` gives one line.
pub fn to_json<T: Serialize>(value: &T, indent: Option<usize>) -> String {
    let mut out = Vec::new();
    let result = match indent {
        None => value.serialize(&mut serde_json::Serializer::with_formatter(&mut out, FixedDigits(CompactFormatter))),
        Some(n) => {
            let pad = " ".repeat(n);
            let fmt = FixedDigits(PrettyFormatter::with_indent(pad.as_bytes()));
            value.serialize(&mut serde_json::Serializer::with_formatter(&mut out, fmt))
        }
    };
    result.expect("report values are always serializable");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
