use sallylab::hilbert::{binomial_fit, hilbert_function};
use sallylab::ideal::quotient_length;
use sallylab::closure::{integral_closure, is_integrally_closed, ratliff_rush};
use sallylab::MonomialIdeal;

fn report(name: &str, dim: usize, gens: &[Vec<u32>], window: usize, smax: usize) {
    let q_gens: Vec<Vec<u32>> = gens.iter().filter(|g| g.iter().filter(|&&e| e>0).count() <= 1).cloned().collect();
    let q = MonomialIdeal::from_exponents(dim, &q_gens).unwrap();
    let i = MonomialIdeal::from_exponents(dim, gens).unwrap();
    let table = hilbert_function(&i, window).unwrap();
    let fit = binomial_fit(&table, dim).unwrap();
    let len_ai = table.values[0] as i128;
    let rank = fit.e[1] - fit.e[0] + len_ai;
    let e2 = if dim >= 2 { fit.e[2] } else { 0 };
    let m_inv = len_ai - fit.e[0] + fit.e[1] - e2 - 1;
    let mut s = vec![];
    for n in 1..=smax {
        let iqn = i.product(&q.power(n)).unwrap();
        s.push(quotient_length(&iqn, &i.power(n+1)).unwrap());
    }
    let rr = ratliff_rush(&i, 10).unwrap();
    println!("{name}: lenAI={len_ai} e={:?} post={} rank={rank} m={m_inv} s={:?} intcl={} rrcl={}",
        fit.e, fit.postulation, s,
        is_integrally_closed(&i).unwrap(),
        rr.ideal.equals(&i).unwrap());
}

#[test]
fn scratch_fixture_numbers() {
    // family l=1,2,3
    report("fam1", 2, &[vec![4,0],vec![0,4],vec![1,3],vec![3,1]], 10, 6);
    report("fam2", 2, &[vec![6,0],vec![0,6],vec![1,5],vec![3,3],vec![5,1]], 10, 6);
    report("fam3", 2, &[vec![8,0],vec![0,8],vec![1,7],vec![3,5],vec![5,3],vec![7,1]], 10, 6);
    report("x5y5", 2, &[vec![5,0],vec![0,5],vec![2,3],vec![3,2]], 10, 6);
    report("fin1", 2, &[vec![7,0],vec![0,7],vec![1,6],vec![2,5],vec![4,3],vec![5,2]], 10, 6);
    report("fin2", 2, &[vec![8,0],vec![0,8],vec![2,6],vec![3,5],vec![5,3],vec![6,2]], 10, 6);
    report("fin3", 2, &[vec![7,0],vec![0,7],vec![1,6],vec![3,4],vec![4,3],vec![6,1]], 10, 6);
    // family l=1 integral closure of powers
    let i = MonomialIdeal::from_exponents(2, &[vec![4,0],vec![0,4],vec![1,3],vec![3,1]]).unwrap();
    for n in 2..=3 {
        let p = i.power(n);
        println!("fam1 I^{n} integrally closed: {}", integral_closure(&p).unwrap().equals(&p).unwrap());
    }
    let m8 = MonomialIdeal::maximal(2).power(8);
    println!("fam1 I^2 == (x,y)^8: {}", i.power(2).equals(&m8).unwrap());
}
