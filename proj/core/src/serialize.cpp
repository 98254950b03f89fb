namespace templike {
}
