//! The clique solver on its own: Paley graph, DIMACS round trip, and the
//! intersection graph of A5 on pairs.

use permdensity::clique::{enumerate_maximum_cliques, max_clique, UndirectedGraph};
use permdensity::constructions::a5_pairs;
use permdensity::density::intersection_graph;

fn main() -> permdensity::error::Result<()> {
    // Paley graph on 13 vertices, clique number 3
    let q = 13;
    let squares: Vec<usize> = (1..q).map(|x| x * x % q).collect();
    let paley = UndirectedGraph::from_fn(q, |a, b| squares.contains(&((a + q - b) % q)));
    let c = max_clique(&paley)?;
    println!("Paley(13): omega = {} {:?} ({} nodes)", c.size, c.vertices, c.nodes);

    let text = paley.to_dimacs();
    let back = UndirectedGraph::from_dimacs(&text)?;
    assert_eq!(back.edges(), paley.edges());
    println!("DIMACS header: {}", text.lines().find(|l| l.starts_with("p ")).unwrap_or(""));

    let ig = intersection_graph(&a5_pairs())?;
    let c = max_clique(&ig)?;
    let all = enumerate_maximum_cliques(&ig, c.size, 10_000)?;
    println!(
        "A5 on pairs: {} non-derangements, largest intersecting set {}, {} maximum cliques",
        ig.vertex_count(),
        c.size,
        all.len()
    );
    Ok(())
}
