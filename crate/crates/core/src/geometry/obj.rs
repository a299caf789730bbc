//! Wavefront OBJ reader: `v`, `vn`, `vt` and `f` directives. Everything else
//! (groups, smoothing, materials, comments) is skipped.

use thiserror::Error;

use crate::scene::Vec3;

/// A face corner: position index and optional normal index, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceVertex {
    pub position: usize,
    pub normal: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObjModel {
    pub positions: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    /// Polygons as written in the file (three or more corners each).
    pub faces: Vec<Vec<FaceVertex>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("OBJ line {line}: {message}")]
pub struct ObjError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ObjError {
    ObjError {
        line,
        message: message.into(),
    }
}

impl ObjModel {
    /// Fan triangulation of every face from its first corner.
    pub fn triangles(&self) -> impl Iterator<Item = [FaceVertex; 3]> + '_ {
        self.faces
            .iter()
            .flat_map(|face| (1..face.len() - 1).map(move |k| [face[0], face[k], face[k + 1]]))
    }
}

pub fn parse_obj(bytes: &[u8]) -> Result<ObjModel, ObjError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
        err(line, "file is not valid UTF-8")
    })?;
    let mut model = ObjModel::default();
    let mut texcoord_count = 0usize;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut parts = line.split_whitespace();
        let Some(directive) = parts.next() else {
            continue;
        };
        match directive {
            "v" => model.positions.push(parse_vec3(&mut parts, line_no, "vertex")?),
            "vn" => model.normals.push(parse_vec3(&mut parts, line_no, "normal")?),
            "vt" => texcoord_count += 1,
            "f" => {
                let corners = parts
                    .map(|word| parse_corner(word, &model, texcoord_count, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                if corners.len() < 3 {
                    return Err(err(line_no, "face needs at least 3 vertices"));
                }
                model.faces.push(corners);
            }
            _ => {}
        }
    }
    Ok(model)
}

fn parse_vec3<'a>(parts: &mut impl Iterator<Item = &'a str>, line: usize, what: &str) -> Result<Vec3, ObjError> {
    let mut coords = [0.0; 3];
    for slot in &mut coords {
        let word = parts
            .next()
            .ok_or_else(|| err(line, format!("{what} needs 3 coordinates")))?;
        let value: f64 = word
            .parse()
            .map_err(|_| err(line, format!("malformed {what} coordinate '{word}'")))?;
        if !value.is_finite() {
            return Err(err(line, format!("non-finite {what} coordinate '{word}'")));
        }
        *slot = value;
    }
    Ok(Vec3::from(coords))
}

/// Resolve a 1-based or negative (relative) OBJ index against `count`
/// elements seen so far.
fn resolve_index(word: &str, count: usize, line: usize, what: &str) -> Result<usize, ObjError> {
    let raw: i64 = word
        .parse()
        .map_err(|_| err(line, format!("malformed {what} index '{word}'")))?;
    let resolved = if raw > 0 {
        raw - 1
    } else if raw < 0 {
        count as i64 + raw
    } else {
        return Err(err(line, format!("{what} index 0 is invalid")));
    };
    if resolved < 0 || resolved >= count as i64 {
        return Err(err(line, format!("{what} index {raw} out of range ({count} defined)")));
    }
    Ok(resolved as usize)
}

fn parse_corner(word: &str, model: &ObjModel, texcoords: usize, line: usize) -> Result<FaceVertex, ObjError> {
    let mut fields = word.split('/');
    let position = resolve_index(fields.next().unwrap_or(""), model.positions.len(), line, "vertex")?;
    let texcoord = fields.next();
    if let Some(t) = texcoord.filter(|t| !t.is_empty()) {
        resolve_index(t, texcoords, line, "texture")?;
    }
    let normal = match fields.next() {
        Some(n) if !n.is_empty() => Some(resolve_index(n, model.normals.len(), line, "normal")?),
        Some(_) => return Err(err(line, format!("malformed face vertex '{word}'"))),
        None => None,
    };
    if fields.next().is_some() {
        return Err(err(line, format!("malformed face vertex '{word}'")));
    }
    Ok(FaceVertex { position, normal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positions_of(model: &ObjModel) -> Vec<[usize; 3]> {
        model.triangles().map(|t| t.map(|c| c.position)).collect()
    }

    #[test]
    fn minimal_triangle() {
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3").unwrap();
        assert_eq!(m.positions.len(), 3);
        assert_eq!(positions_of(&m), vec![[0, 1, 2]]);
    }

    #[test]
    fn quad_is_fan_triangulated() {
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n").unwrap();
        assert_eq!(positions_of(&m), vec![[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn negative_indices_are_relative() {
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf -1 -2 -3").unwrap();
        assert_eq!(positions_of(&m), vec![[2, 1, 0]]);
        // relative to the vertices defined so far, not the whole file
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\nv 5 5 5\nf -4 -3 -1").unwrap();
        assert_eq!(positions_of(&m), vec![[0, 1, 2], [0, 1, 3]]);
    }

    #[test]
    fn face_vertex_forms() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nvt 0 0\nvn 0 0 1\n\
                   f 1//1 2//1 3//1\nf 1/1 2/1 3/1\nf 1/1/1 2/1/1 3/1/-1\n";
        let m = parse_obj(src.as_bytes()).unwrap();
        assert_eq!(m.faces.len(), 3);
        assert_eq!(m.faces[0][0].normal, Some(0));
        assert_eq!(m.faces[1][0].normal, None);
        assert_eq!(m.faces[2][2].normal, Some(0));
    }

    #[test]
    fn unknown_directives_and_comments_skipped() {
        let src = "# comment\nmtllib x.mtl\no thing\ng group\ns 1\nusemtl red\n\
                   v 0 0 0 # trailing\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
        let m = parse_obj(src.as_bytes()).unwrap();
        assert_eq!(m.faces.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_obj(b"v 0 0 0\nv 1 x 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\n\nf 1 2 4\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("out of range"));
        let e = parse_obj(b"v 0 0 0\nf 1 0 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_obj(b"v 0 0 0\nv 1 0 0\nf 1 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_obj(b"v 0 0\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1//9 2 3\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
