//! Self-delimiting tuple coding.
//!
//! A sequence `<e1, ..., en>` is the natural whose binary string is
//!
//! ```text
//! 1 . code(e1) . ... . code(en)      code(e) = (1 b)* 00
//! ```
//!
//! where the `b` run over the binary digits of `e`, most significant first
//! (no digits for `0`). The empty sequence is `1`; `0` is not a sequence.
//! Only images of [`encode`] are sequences, so elements never carry leading
//! zero digits. Seq, Len and projection are all linear in `|r|`.

use num_bigint::BigUint;

use super::Realizer;
use crate::error::{Error, Result};
use crate::numsem::{bit_length, Budget, Meter, Nat};

/// Bit length of the code of `items`.
pub fn encoded_bits(items: &[Nat]) -> u64 {
    1 + items.iter().map(|e| 2 * bit_length(e) + 2).sum::<u64>()
}

/// Encodes `items`, failing if the code would exceed `budget.max_bits`.
pub fn encode_seq(items: &[Nat], budget: &Budget) -> Result<Realizer> {
    Meter::new(budget).admit_bits(encoded_bits(items))?;
    Ok(encode(items))
}

/// Metered encoding used while building realizers.
pub(crate) fn encode_metered(items: &[Nat], meter: &mut Meter) -> Result<Realizer> {
    let bits = encoded_bits(items);
    meter.admit_bits(bits)?;
    meter.charge(bits + 1)?;
    let r = encode(items);
    meter.observe(r.value())?;
    Ok(r)
}

pub fn encode(items: &[Nat]) -> Realizer {
    let mut bits = BitWriter::with_capacity(encoded_bits(items));
    bits.push(true);
    for e in items {
        for i in (0..bit_length(e)).rev() {
            bits.push(true);
            bits.push(e.bit(i));
        }
        bits.push(false);
        bits.push(false);
    }
    Realizer(bits.finish())
}

pub fn decode_seq(r: &Realizer) -> Result<Vec<Nat>> {
    let n = r.value();
    let len = bit_length(n);
    if len & 1 == 0 {
        return Err(Error::NotASequence);
    }
    let mut items = Vec::new();
    let mut current = BitWriter::with_capacity(0);
    // skip the leading tag bit
    let mut i = len - 1;
    while i > 0 {
        let (marker, digit) = (n.bit(i - 1), n.bit(i - 2));
        i -= 2;
        match (marker, digit) {
            (true, d) => {
                if current.is_empty() && !d {
                    // leading zero digit
                    return Err(Error::NotASequence);
                }
                current.push(d);
            }
            (false, false) => {
                items.push(std::mem::replace(&mut current, BitWriter::with_capacity(0)).finish());
            }
            (false, true) => return Err(Error::NotASequence),
        }
    }
    if !current.is_empty() {
        return Err(Error::NotASequence);
    }
    Ok(items)
}

/// Decoding charged at `|r| + 1` steps.
pub(crate) fn decode_metered(r: &Realizer, meter: &mut Meter) -> Result<Option<Vec<Nat>>> {
    meter.charge(bit_length(r.value()) + 1)?;
    match decode_seq(r) {
        Ok(items) => Ok(Some(items)),
        Err(Error::NotASequence) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn is_seq(r: &Realizer) -> bool {
    decode_seq(r).is_ok()
}

pub fn seq_len(r: &Realizer) -> Result<u64> {
    Ok(decode_seq(r)?.len() as u64)
}

/// The `i`-th component (1-based).
pub fn beta(i: u64, r: &Realizer) -> Result<Nat> {
    let items = decode_seq(r)?;
    let len = items.len() as u64;
    if i == 0 || i > len {
        return Err(Error::IndexOutOfRange { index: i, len });
    }
    Ok(items.into_iter().nth((i - 1) as usize).expect("in range"))
}

/// Accumulates bits most significant first.
struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    fn with_capacity(n: u64) -> Self {
        BitWriter {
            bits: Vec::with_capacity(n as usize),
        }
    }

    fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    fn finish(self) -> Nat {
        let mut digits = vec![0u32; self.bits.len().div_ceil(32)];
        for (i, &b) in self.bits.iter().rev().enumerate() {
            if b {
                digits[i / 32] |= 1 << (i % 32);
            }
        }
        BigUint::new(digits)
    }
}
