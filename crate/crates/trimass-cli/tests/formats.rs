//! The text formats: rational tokens, level lists, matrix dumps, and the
//! mesh file layout.

use trimass::construct::reference_l;
use trimass::exact::rat;
use trimass::mesh::Mesh;
use trimass_cli::formats::{
    parse_levels, parse_range, parse_rational, push_float_matrix, push_rat_matrix, rat_token,
    read_mesh_text, write_mesh_text,
};

#[test]
fn rational_parsing_and_tokens() {
    assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
    assert_eq!(parse_rational("-7/2").unwrap(), rat(-7, 2));
    assert_eq!(parse_rational(" 4 / 8 ").unwrap(), rat(1, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert!(parse_rational("1.5").is_err());
    assert_eq!(rat_token(&rat(-7, 2)), "-7/2");
    assert_eq!(rat_token(&rat(4, 8)), "1/2");
    assert_eq!(rat_token(&rat(5, 1)), "5/1");
}

#[test]
fn range_and_level_parsing() {
    assert_eq!(parse_range("3").unwrap(), (3, 3));
    assert_eq!(parse_range("2..7").unwrap(), (2, 7));
    assert!(parse_range("7..2").is_err());
    assert!(parse_range("a").is_err());
    assert_eq!(parse_levels("1..3").unwrap(), vec![1, 2, 3]);
    assert_eq!(parse_levels("1,2,5").unwrap(), vec![1, 2, 5]);
    assert_eq!(parse_levels("4").unwrap(), vec![4]);
    assert!(parse_levels("3,2").is_err());
    assert!(parse_levels("2,2").is_err());
    assert!(parse_levels("").is_err());
}

#[test]
fn matrix_dumps_carry_shape_and_layout() {
    let mut rational = String::new();
    push_rat_matrix(&mut rational, "L", &reference_l());
    let mut lines = rational.lines();
    assert_eq!(
        lines.next().unwrap(),
        "matrix L rows=10 cols=10 layout=rational"
    );
    let first_row = lines.next().unwrap();
    assert!(first_row.starts_with("1/30 0/1"));
    assert_eq!(rational.lines().count(), 11);

    let mut float = String::new();
    let ops = trimass::construct::construct_float(1.0).unwrap();
    push_float_matrix(&mut float, "T", &ops.t);
    let mut lines = float.lines();
    assert_eq!(lines.next().unwrap(), "matrix T rows=10 cols=10 layout=float");
    let first_row = lines.next().unwrap();
    assert!(first_row.starts_with("1.0000000000000000e0 "));
    assert_eq!(float.lines().count(), 11);
}

#[test]
fn mesh_text_round_trips() {
    let mesh = Mesh::structured(2).unwrap();
    let text = write_mesh_text(&mesh);
    let back = read_mesh_text(&text).unwrap();
    assert_eq!(back.n_vertices(), mesh.n_vertices());
    assert_eq!(back.n_triangles(), mesh.n_triangles());
    assert_eq!(back.n_edges(), mesh.n_edges());
    for i in 0..mesh.n_vertices() {
        let (a, b) = (mesh.vertex(i), back.vertex(i));
        assert_eq!((a.x, a.y), (b.x, b.y));
    }
    for t in 0..mesh.n_triangles() {
        assert_eq!(mesh.triangle(t), back.triangle(t));
    }
}

#[test]
fn mesh_text_accepts_comments_and_blank_lines() {
    let text = "# reference element\n\n$vertices\n3\n-1 1\n-1 -1\n1 -1\n\n$triangles\n1\n1 2 3\n";
    let mesh = read_mesh_text(text).unwrap();
    assert_eq!(mesh.n_vertices(), 3);
    assert_eq!(mesh.n_triangles(), 1);
}

#[test]
fn mesh_text_rejects_malformed_input() {
    assert!(read_mesh_text("").is_err());
    assert!(read_mesh_text("$triangles\n0\n").is_err());
    assert!(read_mesh_text("$vertices\n1\n0\n$triangles\n0\n").is_err());
    let zero_based = "$vertices\n3\n-1 1\n-1 -1\n1 -1\n$triangles\n1\n0 1 2\n";
    let err = read_mesh_text(zero_based).unwrap_err();
    assert!(err.contains("1-based"), "{err}");
    // clockwise corners must be rejected by mesh validation
    let clockwise = "$vertices\n3\n-1 1\n-1 -1\n1 -1\n$triangles\n1\n1 3 2\n";
    assert!(read_mesh_text(clockwise).is_err());
}
