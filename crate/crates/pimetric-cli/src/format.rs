//! Text formats for vectors, explicit maps, structured symmetries, linear
//! block maps and generator matrices.
//!
//! A vector prints its element indices in decimal, commas inside a block
//! and `|` between blocks: `1,0|1` is a vector of the partition (2, 1).
//! Every multi-line document starts with the header `q=<q> pi=<k1>,<k2>,...`
//! identifying the space, so each file is self-contained:
//!
//! * explicit map: one `input -> output` line per vector, inputs in
//!   enumeration order;
//! * structured symmetry: `sigma: [...]` (1-based images) followed by one
//!   `T<i>: [...]` table per block (0-based block-value images);
//! * linear block map: `sigma: [...]` followed by one `A<i>: [[..],[..]]`
//!   row-major matrix per block;
//! * generator matrix: one vector per line.

use thiserror::Error;

use pimetric::{
    BlockBijection, BlockMatrix, BlockVector, ExplicitMap, FieldSpec, GeneratorMatrix,
    LinearBlockMap, Partition, Permutation, PiSpace, StructuredSymmetry,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Domain(#[from] pimetric::Error),
}

impl FormatError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            msg: msg.into(),
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

pub fn format_partition(p: &Partition) -> String {
    let strs: Vec<String> = p.blocks().iter().map(usize::to_string).collect();
    strs.join(",")
}

pub fn parse_partition(s: &str) -> Result<Partition> {
    let blocks = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| FormatError::at(1, format!("bad block size {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::new(blocks)?)
}

pub fn format_vector(v: &BlockVector) -> String {
    let m = v.space().partition().block_count();
    let blocks: Vec<String> = (0..m)
        .map(|i| {
            let parts: Vec<String> = v.block(i).iter().map(u16::to_string).collect();
            parts.join(",")
        })
        .collect();
    blocks.join("|")
}

pub fn parse_vector(space: &PiSpace, s: &str) -> Result<BlockVector> {
    parse_vector_at(space, s, 1)
}

fn parse_vector_at(space: &PiSpace, s: &str, line: usize) -> Result<BlockVector> {
    let partition = space.partition();
    let block_strs: Vec<&str> = s.trim().split('|').collect();
    if block_strs.len() != partition.block_count() {
        return Err(FormatError::at(
            line,
            format!(
                "expected {} blocks, got {}",
                partition.block_count(),
                block_strs.len()
            ),
        ));
    }
    let mut coords = Vec::with_capacity(partition.dimension());
    for (i, b) in block_strs.iter().enumerate() {
        let entries: Vec<&str> = b.split(',').collect();
        if entries.len() != partition.blocks()[i] {
            return Err(FormatError::at(
                line,
                format!(
                    "block {} expected {} entries, got {}",
                    i + 1,
                    partition.blocks()[i],
                    entries.len()
                ),
            ));
        }
        for e in entries {
            let c: u16 = e
                .trim()
                .parse()
                .map_err(|_| FormatError::at(line, format!("bad element index {e:?}")))?;
            coords.push(c);
        }
    }
    Ok(BlockVector::from_indices(space.clone(), coords)?)
}

pub fn format_header(space: &PiSpace) -> String {
    format!(
        "q={} pi={}",
        space.field().order(),
        format_partition(space.partition())
    )
}

pub fn parse_header(line: &str) -> Result<PiSpace> {
    let mut parts = line.split_whitespace();
    let q_part = parts
        .next()
        .and_then(|p| p.strip_prefix("q="))
        .ok_or_else(|| FormatError::at(1, "header must start with q=<order>"))?;
    let pi_part = parts
        .next()
        .and_then(|p| p.strip_prefix("pi="))
        .ok_or_else(|| FormatError::at(1, "header must contain pi=<k1>,<k2>,..."))?;
    if parts.next().is_some() {
        return Err(FormatError::at(1, "unexpected trailing fields in header"));
    }
    let q: u64 = q_part
        .parse()
        .map_err(|_| FormatError::at(1, format!("bad field order {q_part:?}")))?;
    let field = FieldSpec::new(q)?;
    let partition = parse_partition(pi_part)?;
    Ok(PiSpace::new(field, partition))
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

pub fn write_map(map: &ExplicitMap) -> String {
    let space = map.space();
    let mut out = format_header(space);
    out.push('\n');
    for (i, &t) in map.table().iter().enumerate() {
        let input = space.vector(i as u64).expect("index in range");
        let output = space.vector(t as u64).expect("table entry in range");
        out.push_str(&format_vector(&input));
        out.push_str(" -> ");
        out.push_str(&format_vector(&output));
        out.push('\n');
    }
    out
}

pub fn parse_map(text: &str) -> Result<ExplicitMap> {
    let lines = content_lines(text);
    let Some(&(_, header)) = lines.first() else {
        return Err(FormatError::at(1, "empty document"));
    };
    let space = parse_header(header)?;
    let total = space
        .vector_count()
        .filter(|&t| t <= pimetric::MAX_ENUMERABLE_VECTORS)
        .ok_or(pimetric::Error::SpaceTooLarge {
            cap: pimetric::MAX_ENUMERABLE_VECTORS,
        })?;
    let rows = &lines[1..];
    if rows.len() as u64 != total {
        return Err(FormatError::at(
            lines.last().map_or(2, |&(n, _)| n),
            format!("expected {total} map lines, got {}", rows.len()),
        ));
    }
    let mut table = Vec::with_capacity(total as usize);
    for (expected_index, &(line_no, line)) in rows.iter().enumerate() {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| FormatError::at(line_no, "expected `input -> output`"))?;
        let input = parse_vector_at(&space, lhs, line_no)?;
        let input_index = space.vector_index(&input)?;
        if input_index != expected_index as u64 {
            return Err(FormatError::at(
                line_no,
                format!(
                    "inputs must appear in enumeration order: expected vector {}, got {}",
                    format_vector(&space.vector(expected_index as u64).expect("in range")),
                    lhs.trim()
                ),
            ));
        }
        let output = parse_vector_at(&space, rhs, line_no)?;
        table.push(space.vector_index(&output)? as u32);
    }
    Ok(ExplicitMap::new(space, table)?)
}

fn format_usize_list(items: impl Iterator<Item = u64>) -> String {
    let strs: Vec<String> = items.map(|x| x.to_string()).collect();
    format!("[{}]", strs.join(","))
}

fn parse_u64_list(s: &str, line: usize) -> Result<Vec<u64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| FormatError::at(line, "expected a [..] list"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| FormatError::at(line, format!("bad list entry {t:?}")))
        })
        .collect()
}

/// `sigma: [...]` with 1-based images.
fn format_sigma(sigma: &Permutation) -> String {
    format!(
        "sigma: {}",
        format_usize_list(sigma.images().iter().map(|&j| j as u64 + 1))
    )
}

fn parse_sigma(value: &str, m: usize, line: usize) -> Result<Permutation> {
    let images = parse_u64_list(value, line)?;
    if images.len() != m {
        return Err(FormatError::at(
            line,
            format!("sigma must list {m} images, got {}", images.len()),
        ));
    }
    let zero_based = images
        .iter()
        .map(|&j| {
            (1..=m as u64)
                .contains(&j)
                .then(|| j as usize - 1)
                .ok_or_else(|| {
                    FormatError::at(line, format!("sigma image {j} out of range 1..={m}"))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::new(zero_based)?)
}

pub fn write_structured(sym: &StructuredSymmetry) -> String {
    let mut out = format_header(sym.space());
    out.push('\n');
    out.push_str(&format_sigma(sym.sigma()));
    out.push('\n');
    for (i, block) in sym.block_maps().iter().enumerate() {
        out.push_str(&format!(
            "T{}: {}\n",
            i + 1,
            format_usize_list(block.table().iter().map(|&t| t as u64))
        ));
    }
    out
}

pub fn parse_structured(text: &str) -> Result<StructuredSymmetry> {
    let lines = content_lines(text);
    let Some(&(_, header)) = lines.first() else {
        return Err(FormatError::at(1, "empty document"));
    };
    let space = parse_header(header)?;
    let m = space.partition().block_count();
    if lines.len() != m + 2 {
        return Err(FormatError::at(
            lines.last().map_or(2, |&(n, _)| n),
            format!("expected sigma plus {m} block tables"),
        ));
    }

    let (sigma_line_no, sigma_line) = lines[1];
    let sigma_value = sigma_line
        .strip_prefix("sigma:")
        .ok_or_else(|| FormatError::at(sigma_line_no, "expected `sigma: [...]`"))?;
    let sigma = parse_sigma(sigma_value, m, sigma_line_no)?;

    let mut blocks = Vec::with_capacity(m);
    for (i, &(line_no, line)) in lines[2..].iter().enumerate() {
        let tag = format!("T{}:", i + 1);
        let value = line
            .strip_prefix(&tag)
            .ok_or_else(|| FormatError::at(line_no, format!("expected `{tag} [...]`")))?;
        let entries = parse_u64_list(value, line_no)?;
        let table = entries
            .iter()
            .map(|&t| {
                u32::try_from(t)
                    .map_err(|_| FormatError::at(line_no, format!("table entry {t} too large")))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(BlockBijection::new(table)?);
    }
    Ok(StructuredSymmetry::new(space, sigma, blocks)?)
}

pub fn write_linear(map: &LinearBlockMap) -> String {
    let mut out = format_header(map.space());
    out.push('\n');
    out.push_str(&format_sigma(map.sigma()));
    out.push('\n');
    for (i, mat) in map.matrices().iter().enumerate() {
        let k = mat.size();
        let rows: Vec<String> = (0..k)
            .map(|r| format_usize_list((0..k).map(|c| mat.entry(r, c).index() as u64)))
            .collect();
        out.push_str(&format!("A{}: [{}]\n", i + 1, rows.join(",")));
    }
    out
}

pub fn parse_linear(text: &str) -> Result<LinearBlockMap> {
    let lines = content_lines(text);
    let Some(&(_, header)) = lines.first() else {
        return Err(FormatError::at(1, "empty document"));
    };
    let space = parse_header(header)?;
    let m = space.partition().block_count();
    if lines.len() != m + 2 {
        return Err(FormatError::at(
            lines.last().map_or(2, |&(n, _)| n),
            format!("expected sigma plus {m} block matrices"),
        ));
    }

    let (sigma_line_no, sigma_line) = lines[1];
    let sigma_value = sigma_line
        .strip_prefix("sigma:")
        .ok_or_else(|| FormatError::at(sigma_line_no, "expected `sigma: [...]`"))?;
    let sigma = parse_sigma(sigma_value, m, sigma_line_no)?;

    let mut matrices = Vec::with_capacity(m);
    for (i, &(line_no, line)) in lines[2..].iter().enumerate() {
        let tag = format!("A{}:", i + 1);
        let value = line
            .strip_prefix(&tag)
            .ok_or_else(|| FormatError::at(line_no, format!("expected `{tag} [[...],...]`")))?;
        let k = space.partition().blocks()[i];
        let rows = parse_nested_list(value, line_no)?;
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(FormatError::at(
                line_no,
                format!("matrix {} must be {k}x{k}", i + 1),
            ));
        }
        let entries: Vec<u16> = rows
            .iter()
            .flatten()
            .map(|&e| {
                u16::try_from(e)
                    .map_err(|_| FormatError::at(line_no, format!("entry {e} too large")))
            })
            .collect::<Result<Vec<_>>>()?;
        matrices.push(BlockMatrix::from_indices(
            space.field().clone(),
            k,
            entries,
        )?);
    }
    Ok(LinearBlockMap::new(space, sigma, matrices)?)
}

/// Parse `[[a,b],[c,d]]` into rows.
fn parse_nested_list(s: &str, line: usize) -> Result<Vec<Vec<u64>>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| FormatError::at(line, "expected a [[..],..] list"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim_start();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('[')
            .ok_or_else(|| FormatError::at(line, "expected `[` starting a row"))?;
        let close = open
            .find(']')
            .ok_or_else(|| FormatError::at(line, "unterminated row"))?;
        let row = &open[..close];
        rows.push(if row.trim().is_empty() {
            Vec::new()
        } else {
            row.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| FormatError::at(line, format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        });
        rest = open[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(FormatError::at(line, "expected `,` between rows"));
        }
    }
    Ok(rows)
}

pub fn write_generator(g: &GeneratorMatrix) -> String {
    let mut out = format_header(g.space());
    out.push('\n');
    for row in g.rows() {
        out.push_str(&format_vector(row));
        out.push('\n');
    }
    out
}

pub fn parse_generator(text: &str) -> Result<GeneratorMatrix> {
    let lines = content_lines(text);
    let Some(&(_, header)) = lines.first() else {
        return Err(FormatError::at(1, "empty document"));
    };
    let space = parse_header(header)?;
    if lines.len() < 2 {
        return Err(FormatError::at(
            1,
            "generator matrix needs at least one row",
        ));
    }
    let rows = lines[1..]
        .iter()
        .map(|&(line_no, line)| parse_vector_at(&space, line, line_no))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorMatrix::new(rows)?)
}
