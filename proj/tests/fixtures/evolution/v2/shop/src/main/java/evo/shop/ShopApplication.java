package evo.shop;

@org.springframework.boot.autoconfigure.SpringBootApplication
public class ShopApplication {
    public static void main(String[] args) {
    }
}
