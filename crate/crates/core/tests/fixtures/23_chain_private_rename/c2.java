class c2 extends c3 {
}
