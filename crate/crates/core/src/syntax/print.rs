use super::Node;

const IMP: u8 = 0;
const IFF: u8 = 1;
const COND: u8 = 2;
const DISJ: u8 = 3;
const CONJ: u8 = 4;
const UNARY: u8 = 5;
const ATOM: u8 = 6;

pub(super) fn print_node(node: &Node) -> String {
    let mut out = String::new();
    write(node, IMP, &mut out);
    out
}

fn is_top(node: &Node) -> bool {
    matches!(node, Node::Imp(a, b) if **a == Node::Bot && **b == Node::Bot)
}

fn level(node: &Node) -> u8 {
    match node {
        Node::Var(_) | Node::Bot => ATOM,
        n if is_top(n) => ATOM,
        Node::Imp(_, b) if **b == Node::Bot => UNARY,
        Node::Imp(..) => IMP,
        Node::Cond(..) => COND,
        Node::Or(..) => DISJ,
        Node::And(..) => CONJ,
        Node::Box(_) | Node::BoxI(_) | Node::BoxM(_) => UNARY,
    }
}

fn write(node: &Node, min: u8, out: &mut String) {
    let own = level(node);
    if own < min {
        out.push('(');
        write(node, IMP, out);
        out.push(')');
        return;
    }
    let binary = |a: &Node, op: &str, la: u8, b: &Node, lb: u8, out: &mut String| {
        write(a, la, out);
        out.push_str(op);
        write(b, lb, out);
    };
    match node {
        Node::Var(v) => out.push_str(v),
        Node::Bot => out.push_str("false"),
        n if is_top(n) => out.push_str("true"),
        Node::Imp(a, b) if **b == Node::Bot => {
            out.push('~');
            write(a, UNARY, out);
        }
        Node::Imp(a, b) => binary(a, " -> ", IFF, b, IMP, out),
        Node::Cond(a, b) => binary(a, " ~> ", DISJ, b, COND, out),
        Node::Or(a, b) => binary(a, " | ", DISJ, b, CONJ, out),
        Node::And(a, b) => binary(a, " & ", CONJ, b, UNARY, out),
        Node::Box(a) => {
            out.push_str("[]");
            write(a, UNARY, out);
        }
        Node::BoxI(a) => {
            out.push_str("[I]");
            write(a, UNARY, out);
        }
        Node::BoxM(a) => {
            out.push_str("[M]");
            write(a, UNARY, out);
        }
    }
}
